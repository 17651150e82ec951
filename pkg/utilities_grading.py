# ///////////////////////////////////////////////////////////////////////
#
#                          UTILITIES GRADING
#   Degrees m + n*spoke of the extended grading group, the tri-degrees used
#   by spectral sequences and the rectangular degree windows every
#   computation is restricted to.
#
# ///////////////////////////////////////////////////////////////////////

from dataclasses import dataclass
from utilities_exceptions import ConfigError, raise_engine_error
import re

DEGREE_PATTERN = re.compile(r'^\s*(-?\d+)([+-]\d+)@\s*$')
TRI_DEGREE_PATTERN = re.compile(r'^\s*(-?\d+[+-]\d+@)\|(\d+)\|(\d+)\s*$')

# -----------------------------------------------------------------------
#                            SPOKE DEGREE
# -----------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SpokeDegree:
    m: int
    n: int

    def __add__(self, other: 'SpokeDegree') -> 'SpokeDegree':
        return SpokeDegree(self.m + other.m, self.n + other.n)

    def __sub__(self, other: 'SpokeDegree') -> 'SpokeDegree':
        return SpokeDegree(self.m - other.m, self.n - other.n)

    def __neg__(self) -> 'SpokeDegree':
        return SpokeDegree(-self.m, -self.n)

    def __mul__(self, k: int) -> 'SpokeDegree':
        return SpokeDegree(k * self.m, k * self.n)

    __rmul__ = __mul__

    @property
    def virtual_dim(self) -> int:
        return self.m + self.n

    @property
    def parity(self) -> int:
        """Commutation parity: the parity of the integer coordinate."""
        return self.m % 2

    def __str__(self) -> str:
        return format_degree(self)

ZERO = SpokeDegree(0, 0)
SPOKE = SpokeDegree(0, 1)
LAMBDA = SpokeDegree(0, 2)
INTEGER_ONE = SpokeDegree(1, 0)

def degree_add(d1: SpokeDegree, d2: SpokeDegree) -> SpokeDegree:
    return d1 + d2

def virtual_dim(d: SpokeDegree) -> int:
    return d.m + d.n

def koszul_sign(d1: SpokeDegree, d2: SpokeDegree) -> int:
    return -1 if d1.parity and d2.parity else 1

def format_degree(d: SpokeDegree) -> str:
    return f"{d.m}{d.n:+d}@"

def parse_degree(text: str) -> SpokeDegree:
    match = DEGREE_PATTERN.match(text)
    if match is None:
        raise_engine_error(ConfigError(f"Invalid degree {text!r}, expected the form m+n@"))
    return SpokeDegree(int(match.group(1)), int(match.group(2)))

# -----------------------------------------------------------------------
#                             TRI DEGREE
# -----------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class TriDegree:
    total: SpokeDegree
    s: int
    f: int = 0

    def __post_init__(self):
        if self.s < 0 or self.f < 0:
            raise ValueError(f"Cohomological degree and filtration must be nonnegative, got s={self.s}, f={self.f}")

    @property
    def internal(self) -> SpokeDegree:
        return self.total + SpokeDegree(self.s, 0)

    def __str__(self) -> str:
        return format_tri_degree(self)

def tri_degree_from_internal(internal: SpokeDegree, s: int, f: int = 0) -> TriDegree:
    return TriDegree(internal - SpokeDegree(s, 0), s, f)

def format_tri_degree(t: TriDegree) -> str:
    return f"{format_degree(t.total)}|{t.s}|{t.f}"

def parse_tri_degree(text: str) -> TriDegree:
    match = TRI_DEGREE_PATTERN.match(text)
    if match is None:
        raise_engine_error(ConfigError(f"Invalid tri-degree {text!r}, expected the form m+n@|s|f"))
    return TriDegree(parse_degree(match.group(1)), int(match.group(2)), int(match.group(3)))

def is_differential_shift(source: TriDegree, target: TriDegree, r: int = None) -> bool:
    """True when target sits where a differential out of source must land."""
    if target.total != source.total - INTEGER_ONE or target.s != source.s + 1:
        return False
    return r is None or target.f == source.f + r

# -----------------------------------------------------------------------
#                            DEGREE WINDOW
# -----------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeWindow:
    m_min: int
    m_max: int
    n_min: int
    n_max: int
    s_max: int = 0

    def __post_init__(self):
        if self.m_min > self.m_max or self.n_min > self.n_max or self.s_max < 0:
            raise_engine_error(ConfigError(f"Empty degree window {format_window(self)} with s_max={self.s_max}"))

    def contains(self, d: SpokeDegree) -> bool:
        return self.m_min <= d.m <= self.m_max and self.n_min <= d.n <= self.n_max

    def contains_tri(self, t: TriDegree) -> bool:
        return self.contains(t.total) and t.s <= self.s_max

    def with_s_max(self, s_max: int) -> 'DegreeWindow':
        return DegreeWindow(self.m_min, self.m_max, self.n_min, self.n_max, s_max)

    def __str__(self) -> str:
        return format_window(self)

def enumerate_window(w: DegreeWindow) -> list:
    return [SpokeDegree(m, n) for m in range(w.m_min, w.m_max + 1) for n in range(w.n_min, w.n_max + 1)]

def format_window(w: DegreeWindow) -> str:
    return f"{w.m_min}:{w.m_max}:{w.n_min}:{w.n_max}"

def parse_window(text: str, s_max: int = 0) -> DegreeWindow:
    parts = text.split(':')
    try:
        m_min, m_max, n_min, n_max = (int(part) for part in parts)
    except ValueError:
        raise_engine_error(ConfigError(f"Invalid window {text!r}, expected m0:m1:n0:n1"))
    return DegreeWindow(m_min, m_max, n_min, n_max, s_max)
