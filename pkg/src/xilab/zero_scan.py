"""Critical-line zeros of xi: sign-change scan of Xi(t), bisection, zero tables."""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from pathlib import Path

from .errors import DomainError, ZeroTableError
from .specfun import DEFAULT_CONFIG, SpecFunConfig
from .xi_engine import big_xi

CSV_HEADER = "n,t,bracket_lo,bracket_hi,residual"
FIELDS = ("n", "t", "bracket_lo", "bracket_hi", "residual")


@dataclass(frozen=True)
class CriticalZero:
    n: int
    t: float
    bracket_lo: float
    bracket_hi: float
    residual: float

    @property
    def s(self) -> complex:
        return complex(0.5, self.t)


@dataclass(frozen=True)
class ScanConfig:
    t_min: float = 0.0
    t_max: float = 60.0
    step: float = 0.05
    bisect_tol: float = 1e-10

    def __post_init__(self):
        if not 0.0 <= self.t_min < self.t_max:
            raise DomainError("need 0 <= t_min < t_max")
        if not 0.0 < self.step <= 0.25:
            raise DomainError("need 0 < step <= 0.25")
        if not self.bisect_tol >= 1e-12:
            raise DomainError("bisect_tol must be >= 1e-12")

    def grid_size(self) -> int:
        return int(math.floor((self.t_max - self.t_min) / self.step + 1e-9)) + 1

    def point(self, i: int) -> float:
        return self.t_min + i * self.step


def _values(cfg: ScanConfig, lo: int, hi: int, method: str, config: SpecFunConfig) -> list:
    return [big_xi(cfg.point(i), config, method) for i in range(lo, hi)]


def scan_brackets(
    cfg: ScanConfig,
    jobs: int = 1,
    method: str = "em",
    config: SpecFunConfig = DEFAULT_CONFIG,
) -> list:
    """All grid intervals (t_i, t_{i+1}) over which Xi changes sign.

    Grid points are t_min + i * step, so the result does not depend on how the
    range is split across ``jobs`` workers.
    """
    m = cfg.grid_size()
    if jobs <= 1 or m < 64:
        values = _values(cfg, 0, m, method, config)
    else:
        chunk = math.ceil(m / jobs)
        spans = [(a, min(a + chunk, m)) for a in range(0, m, chunk)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(lambda sp: _values(cfg, sp[0], sp[1], method, config), spans)
            values = [v for part in parts for v in part]
    out = []
    for i in range(m - 1):
        if (values[i] > 0.0) != (values[i + 1] > 0.0):
            out.append((cfg.point(i), cfg.point(i + 1)))
    return out


def refine_zero(
    bracket: tuple,
    tol: float = 1e-10,
    method: str = "em",
    config: SpecFunConfig = DEFAULT_CONFIG,
    n: int = 0,
) -> CriticalZero:
    """Bisect a sign-change bracket of Xi down to width <= tol."""
    lo, hi = float(bracket[0]), float(bracket[1])
    flo = big_xi(lo, config, method)
    fhi = big_xi(hi, config, method)
    if (flo > 0.0) == (fhi > 0.0):
        raise DomainError(f"no sign change of Xi on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fmid = big_xi(mid, config, method)
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    t = 0.5 * (lo + hi)
    return CriticalZero(n=n, t=t, bracket_lo=lo, bracket_hi=hi, residual=abs(big_xi(t, config, method)))


def find_zeros(
    cfg: ScanConfig = ScanConfig(),
    jobs: int = 1,
    method: str = "em",
    config: SpecFunConfig = DEFAULT_CONFIG,
) -> list:
    brackets = scan_brackets(cfg, jobs, method, config)

    def work(item):
        i, br = item
        return refine_zero(br, cfg.bisect_tol, method, config, n=i + 1)

    if jobs <= 1:
        return [work(item) for item in enumerate(brackets)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(work, enumerate(brackets)))


@lru_cache(maxsize=16)
def cached_zeros(cfg: ScanConfig, method: str = "em", config: SpecFunConfig = DEFAULT_CONFIG) -> tuple:
    """Memoised ``find_zeros``; results are independent of the worker count."""
    return tuple(find_zeros(cfg, 1, method, config))


def validate_table(zeros) -> None:
    prev = -math.inf
    for i, z in enumerate(zeros, start=1):
        if z.n != i:
            raise ZeroTableError(f"index {z.n} breaks contiguous numbering (expected {i})")
        if not z.t > prev:
            raise ZeroTableError(f"ordinate {z.t!r} is not strictly increasing")
        if not z.bracket_lo < z.t < z.bracket_hi:
            raise ZeroTableError(f"ordinate {z.t!r} lies outside its bracket")
        prev = z.t


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_zero_table(path, zeros) -> None:
    zeros = list(zeros)
    validate_table(zeros)
    lines = [CSV_HEADER]
    for z in zeros:
        lines.append(f"{z.n},{_fmt(z.t)},{_fmt(z.bracket_lo)},{_fmt(z.bracket_hi)},{_fmt(z.residual)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def write_zero_table_json(path, zeros) -> None:
    zeros = list(zeros)
    validate_table(zeros)
    doc = {"fields": list(FIELDS), "zeros": [asdict(z) for z in zeros]}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="ascii")


def read_zero_table(path) -> list:
    text = Path(path).read_text(encoding="ascii")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != CSV_HEADER:
        raise ZeroTableError(f"expected header {CSV_HEADER!r}", line=1)
    zeros = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.strip().split(",")
        if len(parts) != len(FIELDS):
            raise ZeroTableError(f"expected {len(FIELDS)} fields, got {len(parts)}", line=lineno)
        try:
            n = int(parts[0])
            t, lo, hi, res = (float(p) for p in parts[1:])
        except ValueError as exc:
            raise ZeroTableError(str(exc), line=lineno) from None
        zeros.append(CriticalZero(n, t, lo, hi, res))
    try:
        validate_table(zeros)
    except ZeroTableError as exc:
        raise ZeroTableError(f"invalid table {path}: {exc}") from None
    return zeros


def read_zero_table_json(path) -> list:
    doc = json.loads(Path(path).read_text(encoding="ascii"))
    zeros = [CriticalZero(**row) for row in doc["zeros"]]
    validate_table(zeros)
    return zeros
