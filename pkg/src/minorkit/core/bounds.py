# src/minorkit/core/bounds.py

"""Exact evaluation of the explicit bound functions behind obstruction sizes.

Every asymptotic constant is a named integer (default 1) and the linkage
function ``f_ul`` is a plug-in. Values are Python integers; a bit budget
stops evaluations that would not fit in memory.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .. import config
from ..errors import ConfigurationError, InvalidArgument, ResourceLimit

logger = logging.getLogger(__name__)

DEFAULT_CONSTANTS: Dict[str, int] = {
    "c_flatwall": 1,       # flat wall height factor, quadratic in the clique size
    "c_grid_wall": 1,      # treewidth-to-wall factor exponent
    "c_folio": 1,          # folio count exponent
    "c_var": 1,            # palette variety exponent
    "c_homogeneous": 1,    # homogeneous subwall height factor
    "c_irrelevant": 1,     # irrelevant wall height factor
    "c_grid_universal": 1, # planar graphs on n vertices live in a (c*n)-grid
    "c_detail": 1,         # detail of the family, c * s^2
    "c_rep": 1,            # representative count exponent
}


def odd(x: int) -> int:
    return x if x % 2 else x + 1


def ceil_log2(x: int) -> int:
    return 0 if x <= 1 else (x - 1).bit_length()


def ceil_sqrt(x: int) -> int:
    if x < 0:
        raise InvalidArgument(f"square root of negative {x}")
    r = math.isqrt(x)
    return r if r * r == x else r + 1


class UniqueLinkage(BaseModel):
    """The linkage function as ``coefficient * x**degree`` or ``coefficient * base**x``."""

    kind: str = Field("identity", pattern="^(identity|polynomial|exponential)$")
    coefficient: int = Field(1, ge=1)
    degree: int = Field(1, ge=1)
    base: int = Field(2, ge=2)

    def __call__(self, x: int) -> int:
        if self.kind == "identity":
            return x
        if self.kind == "polynomial":
            return self.coefficient * x ** self.degree
        return self.coefficient * self.base ** x


class BoundParams(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    a: Optional[int] = Field(None, ge=0)
    s: Optional[int] = Field(None, ge=0)
    k: Optional[int] = Field(None, ge=0)
    t: Optional[int] = Field(None, ge=0)
    l: Optional[int] = Field(None, ge=0)
    q: Optional[int] = Field(None, ge=0)
    r: Optional[int] = Field(None, ge=0)
    h: Optional[int] = Field(None, ge=0)
    x: Optional[int] = Field(None, ge=0)
    z: Optional[int] = Field(None, ge=0)
    p: Optional[int] = Field(None, ge=0)
    d: Optional[int] = Field(None, ge=0)
    y: Optional[int] = Field(None, ge=0)
    a_tilde: Optional[int] = Field(None, ge=0)
    constants: Dict[str, int] = Field(default_factory=dict)
    f_ul: Optional[UniqueLinkage] = None

    def constant(self, name: str) -> int:
        if name not in DEFAULT_CONSTANTS:
            raise ConfigurationError(f"unknown constant {name!r}")
        return self.constants.get(name, DEFAULT_CONSTANTS[name])

    def constants_snapshot(self) -> Dict[str, int]:
        return {name: self.constant(name) for name in DEFAULT_CONSTANTS}


@dataclass
class TraceEntry:
    name: str
    note: str
    args: Dict[str, int]
    value: int

    def to_dict(self) -> Dict[str, str]:
        return {"name": self.name, "note": self.note,
                "args": ",".join(f"{k}={v}" for k, v in self.args.items()), "value": str(self.value)}


@dataclass
class _Bound:
    name: str
    params: Tuple[str, ...]
    note: str
    fn: Callable
    needs_ful: bool = False
    monotone: Tuple[str, ...] = ()


CATALOG: Dict[str, _Bound] = {}

# bounds sized by the planar part g(s-a) of an obstruction shrink as a grows
_PLANAR_PART = ("s", "k")


def _bound(name: str, params: Tuple[str, ...], note: str, needs_ful: bool = False,
           monotone: Optional[Tuple[str, ...]] = None):
    """Register a catalog entry; ``monotone`` lists the parameters it is nondecreasing in (default: all)."""
    def register(fn):
        CATALOG[name] = _Bound(name, params, note, fn, needs_ful, params if monotone is None else monotone)
        return fn
    return register


class _Evaluator:
    def __init__(self, p: BoundParams, max_bits: int):
        self.p = p
        self.max_bits = max_bits
        self.trace: List[TraceEntry] = []
        self._warned = False

    def c(self, name: str) -> int:
        return self.p.constant(name)

    def check(self, value: int) -> int:
        if value.bit_length() > self.max_bits:
            raise ResourceLimit(f"bound value exceeds {self.max_bits} bits", budget=self.max_bits)
        return value

    def pow2(self, e: int) -> int:
        if e > self.max_bits:
            raise ResourceLimit(f"power of two with a {e.bit_length()}-bit exponent exceeds {self.max_bits} bits",
                                budget=self.max_bits)
        return 1 << e

    def power(self, base: int, e: int) -> int:
        if base > 1 and e * (base.bit_length() - 1) > self.max_bits:
            raise ResourceLimit(f"power exceeds {self.max_bits} bits", budget=self.max_bits)
        return self.check(base ** e)

    def ful(self, x: int, strict: bool = False) -> int:
        if self.p.f_ul is None:
            if strict:
                raise ConfigurationError("this bound needs an explicit f_ul plug-in")
            if not self._warned:
                logger.warning("no f_ul given; using the identity, which is not a valid linkage bound")
                self._warned = True
            return x
        if self.p.f_ul.kind == "identity" and not self._warned:
            logger.warning("f_ul is the identity; values are placeholders, not proven bounds")
            self._warned = True
        return self.check(self.p.f_ul(x))

    def call(self, name: str, **args) -> int:
        bound = CATALOG[name]
        value = self.check(bound.fn(self, **args))
        self.trace.append(TraceEntry(name, bound.note, dict(args), value))
        return value

    def note(self, symbol: str, value: int, note: str) -> int:
        """Record a named intermediate of a composed bound."""
        self.trace.append(TraceEntry(symbol, note, {}, self.check(value)))
        return value


# ---------------------------------------------------------------------------
# catalog


@_bound("flatwall_factor", ("t",), "flat wall height factor c*t^2")
def _flatwall_factor(ev, t):
    return ev.c("c_flatwall") * t * t


@_bound("apex_count", ("t",), "apices removed by the flat wall theorem, t-5")
def _apex_count(ev, t):
    return max(t - 5, 0)


@_bound("grid_wall_factor", ("t",), "treewidth-to-wall factor 2^(c*t^2*log t) for K_t-minor-free graphs")
def _grid_wall_factor(ev, t):
    return ev.pow2(ev.c("c_grid_wall") * t * t * ceil_log2(t))


@_bound("folio_count", ("t", "l"), "distinct l-folios of t-boundaried graphs, 2^2^(c(t+l)log(t+l))")
def _folio_count(ev, t, l):
    inner = ev.pow2(ev.c("c_folio") * (t + l) * ceil_log2(t + l))
    return ev.pow2(inner)


@_bound("var_count", ("a", "a_tilde", "l"), "palette variety 2^(a^a~ * 2^(c(a~+l)log(a~+l)))")
def _var_count(ev, a, a_tilde, l):
    inner = ev.pow2(ev.c("c_var") * (a_tilde + l) * ceil_log2(a_tilde + l))
    return ev.pow2(ev.power(a, a_tilde) * inner)


@_bound("homogeneous_height", ("r", "a", "a_tilde", "l"), "height forcing a homogeneous r-subwall, c*r^var")
def _homogeneous_height(ev, r, a, a_tilde, l):
    return odd(ev.c("c_homogeneous") * ev.power(r, ev.call("var_count", a=a, a_tilde=a_tilde, l=l)))


@_bound("homogeneity_d", ("a", "l"), "homogeneity degree a+l+3")
def _homogeneity_d(ev, a, l):
    return a + l + 3


@_bound("irrelevant_height", ("a", "l", "q"), "irrelevant wall height odd(c*(f_ul(16a+12l)^3+q))")
def _irrelevant_height(ev, a, l, q):
    return odd(ev.c("c_irrelevant") * (ev.power(ev.ful(16 * a + 12 * l), 3) + q))


@_bound("acquaintance_height", ("a", "l", "q", "k"), "k-fold irrelevance height odd((k+1)(z+2)+q)")
def _acquaintance_height(ev, a, l, q, k):
    z = ev.call("irrelevant_height", a=a, l=l, q=q)
    return odd((k + 1) * (z + 2) + q)


@_bound("packing_height", ("z", "x", "p"), "height packing z x-subwalls at depth p, odd(ceil(sqrt z)(x+2))+2(p+1)")
def _packing_height(ev, z, x, p):
    return odd(ceil_sqrt(z) * (x + 2)) + 2 * (p + 1)


@_bound("scattered_n", ("r", "a", "d"), "grid width for a panchromatic contraction, r^2*a+(a-1)*d")
def _scattered_n(ev, r, a, d):
    return r * r * a + max(a - 1, 0) * d


@_bound("scattered_m", ("r",), "grid height for a panchromatic contraction, 2(r^2+r+1)+1")
def _scattered_m(ev, r):
    return 2 * (r * r + r + 1) + 1


@_bound("apex_grid_margin", ("r",), "margin around the central grid, scattered_m(r)")
def _apex_grid_margin(ev, r):
    return ev.call("scattered_m", r=r)


@_bound("apex_grid_b", ("r", "a"), "period of column classes, l*(a+1)+2")
def _apex_grid_b(ev, r, a):
    return ev.call("apex_grid_margin", r=r) * (a + 1) + 2


@_bound("apex_grid_z", ("r", "a"), "classes per period, ceil(sqrt(scattered_n(r,a,l)))")
def _apex_grid_z(ev, r, a):
    margin = ev.call("apex_grid_margin", r=r)
    return ceil_sqrt(ev.call("scattered_n", r=r, a=a, d=margin))


@_bound("apex_grid_height", ("r", "a"), "central grid height b*z")
def _apex_grid_height(ev, r, a):
    return ev.call("apex_grid_b", r=r, a=a) * ev.call("apex_grid_z", r=r, a=a)


@_bound("apex_grid_neighbors", ("r", "a"), "apex neighbours needed in the central grid, 2^(a-1)*r^2*b^2")
def _apex_grid_neighbors(ev, r, a):
    b = ev.call("apex_grid_b", r=r, a=a)
    return ev.pow2(max(a - 1, 0)) * r * r * b * b


@_bound("grid_universal", ("t",), "grid containing every planar graph on t vertices, c*t")
def _grid_universal(ev, t):
    return ev.c("c_grid_universal") * t


@_bound("forcing_r", ("a", "s", "k"), "apex grid forcing apices into hitting sets, ceil(sqrt((k+a^2+1)m))",
        monotone=_PLANAR_PART)
def _forcing_r(ev, a, s, k):
    m = ev.call("grid_universal", t=max(s - a, 0))
    return ceil_sqrt((k + a * a + 1) * m)


@_bound("apex_wall_height", ("a", "s", "k"), "wall height f1 = apex_grid_height(r,a)+2*margin(r)+2",
        monotone=_PLANAR_PART)
def _apex_wall_height(ev, a, s, k):
    r = ev.call("forcing_r", a=a, s=s, k=k)
    return ev.call("apex_grid_height", r=r, a=a) + 2 * ev.call("apex_grid_margin", r=r) + 2


@_bound("apex_bag_count", ("a", "s", "k"), "internal bags an apex must see, f2 = apex_grid_neighbors(r,a)",
        monotone=_PLANAR_PART)
def _apex_bag_count(ev, a, s, k):
    return ev.call("apex_grid_neighbors", r=ev.call("forcing_r", a=a, s=s, k=k), a=a)


@_bound("apex_bag_depth", ("a", "s", "k"), "depth of those bags, f3 = margin(r)", monotone=_PLANAR_PART)
def _apex_bag_depth(ev, a, s, k):
    return ev.call("apex_grid_margin", r=ev.call("forcing_r", a=a, s=s, k=k))


@_bound("family_detail", ("s",), "detail of the family, c*s^2")
def _family_detail(ev, s):
    return ev.c("c_detail") * s * s


@_bound("tw_bound", ("a", "s", "k"), "treewidth of an obstruction", monotone=_PLANAR_PART)
def _tw_bound(ev, a, s, k):
    l = ev.note("l", ev.call("family_detail", s=s), "detail of the family")
    a_tilde = max(a - 1, 0)
    apices = ev.call("apex_count", t=s)
    b = ev.note("b", ev.call("acquaintance_height", a=a_tilde, l=l, q=3, k=k), "height of a (k+1)-fold irrelevant wall")
    d = ev.note("d", ev.call("homogeneity_d", a=apices, l=l), "homogeneity degree")
    z = ev.note("z", apices + k + 1, "apices plus k+1")
    m = ev.note("m", ev.call("apex_wall_height", a=a, s=s, k=k + 1), "wall height forcing an apex")
    x = ev.note("x", ev.call("apex_bag_count", a=a, s=s, k=k + 1), "internal bags an apex sees")
    p = ev.note("p", ev.call("apex_bag_depth", a=a, s=s, k=k + 1), "depth of those bags")
    h = ev.note("h", ev.call("packing_height", z=z * x + 1, x=b, p=p), "height packing the b-subwalls")
    r = ev.note("r", odd(max(m, h)), "odd(max(m, h))")
    w = ev.note("w", ev.call("homogeneous_height", r=r, a=z, a_tilde=a_tilde, l=d), "homogeneous wall height")
    q = ev.note("q", ev.call("flatwall_factor", t=s) * w, "flat wall height")
    return ev.call("grid_wall_factor", t=s) * q + k + 1


@_bound("rep_exponent", ("h",), "representative count exponent 2^2^2^(c^(2^2^(c' h log h))), c = f_ul(h)",
        needs_ful=True)
def _rep_exponent(ev, h):
    c = ev.ful(h, strict=True)
    top = ev.pow2(ev.pow2(ev.c("c_rep") * h * ceil_log2(h)))
    return ev.pow2(ev.pow2(ev.pow2(ev.power(c, top))))


@_bound("rep_count", ("t", "h"), "representatives of t-boundaried graphs, 2^(f13(h)*t*log t)", needs_ful=True)
def _rep_count(ev, t, h):
    log_t = ceil_log2(t)
    if log_t == 0:
        return 1
    return ev.pow2(ev.call("rep_exponent", h=h) * t * log_t)


@_bound("pairs_count", ("t", "h"), "size of P_{t,h}: sum over I of rep_count(t-|I|, h)", needs_ful=True)
def _pairs_count(ev, t, h):
    return sum(math.comb(t, i) * ev.call("rep_count", t=t - i, h=h) for i in range(t + 1))


@_bound("repeat_length", ("k", "t", "h"), "chain length forcing a repeated characteristic, (k+2)*|P|+1")
def _repeat_length(ev, k, t=None, h=None, y=None):
    if y is None:
        if t is None or h is None:
            raise InvalidArgument("repeat_length needs either y or both t and h")
        y = ev.call("pairs_count", t=t, h=h)
    return (k + 2) * y + 1


@_bound("size_bound", ("t", "l", "k"), "vertices of an obstruction of treewidth t-1, t*2^x", needs_ful=True)
def _size_bound(ev, t, l, k):
    d = ev.call("repeat_length", k=k, t=t, h=l)
    m = (ev.pow2(math.comb(t, 2)) + 1) * d
    x = ev.power(m, t)
    return t * ev.pow2(x)


@_bound("obstruction_size", ("a", "s", "k"), "vertices of an obstruction of the k-apex class", needs_ful=True,
        monotone=_PLANAR_PART)
def _obstruction_size(ev, a, s, k):
    tw = ev.call("tw_bound", a=a, s=s, k=k)
    return ev.call("size_bound", t=tw + 1, l=ev.call("family_detail", s=s), k=k)


# ---------------------------------------------------------------------------


def _arguments(name: str, p: BoundParams) -> Dict[str, int]:
    if name not in CATALOG:
        raise InvalidArgument(f"unknown bound {name!r}; known: {', '.join(sorted(CATALOG))}")
    bound = CATALOG[name]
    args = {}
    if name == "repeat_length" and p.y is not None:
        if p.k is None:
            raise InvalidArgument("repeat_length needs k")
        return {"k": p.k, "y": p.y}
    for param in bound.params:
        value = getattr(p, param)
        if value is None:
            raise InvalidArgument(f"bound {name} needs parameter {param}")
        args[param] = value
    if name in ("var_count", "homogeneous_height") and args["a_tilde"] > args["a"]:
        raise InvalidArgument("a_tilde must not exceed a")
    if name in ("tw_bound", "obstruction_size", "forcing_r") and args["a"] > args["s"]:
        raise InvalidArgument("a must not exceed s")
    return args


def evaluate(name: str, p: BoundParams, max_bits: Optional[int] = None) -> int:
    return explain(name, p, max_bits)[-1].value


def explain(name: str, p: BoundParams, max_bits: Optional[int] = None) -> List[TraceEntry]:
    """Derivation trace: every sub-bound in evaluation order, the requested bound last."""
    args = _arguments(name, p)
    ev = _Evaluator(p, config.budget("bound_max_bits", max_bits))
    ev.call(name, **args)
    logger.debug("evaluated %s with %d sub-terms", name, len(ev.trace) - 1)
    return ev.trace


def catalog() -> List[Tuple[str, Tuple[str, ...], str]]:
    return [(b.name, b.params, b.note) for b in sorted(CATALOG.values(), key=lambda b: b.name)]


# ---------------------------------------------------------------------------
# monotonicity


@dataclass
class MonotonicityReport:
    name: str
    checked: int = 0
    skipped: int = 0
    violations: List[Tuple[Dict[str, int], Dict[str, int], int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.violations


# (smaller, larger) pairs that requests must respect
_ORDERED = (("a_tilde", "a"), ("a", "s"))


def _ordered_pair(bound: _Bound, rng: np.random.Generator, high: int) -> Tuple[Dict[str, int], Dict[str, int]]:
    low = {name: int(rng.integers(0, high + 1)) for name in bound.params}
    up = {name: low[name] + (int(rng.integers(0, 3)) if name in bound.monotone else 0) for name in bound.params}
    for small, large in _ORDERED:
        if small not in low or large not in low:
            continue
        if small in bound.monotone:
            low[small] = min(low[small], low[large])
            up[small] = max(min(up[small], up[large]), low[small])
        else:
            low[large] = max(low[large], low[small])
            up[large] = max(up[large], low[large])
    return low, up


def monotonicity_sweep(name: str, pairs: int = 1000, seed: Optional[int] = None, high: int = 6,
                       f_ul: Optional[UniqueLinkage] = None, constants: Optional[Dict[str, int]] = None,
                       max_bits: Optional[int] = None) -> MonotonicityReport:
    """Evaluate ``name`` on random componentwise-ordered argument pairs and collect decreases.

    Only the parameters the entry is declared monotone in are raised; pairs
    where either side exceeds the bit budget are counted as skipped.
    """
    if name not in CATALOG:
        raise InvalidArgument(f"unknown bound {name!r}; known: {', '.join(sorted(CATALOG))}")
    if pairs < 1 or high < 0:
        raise InvalidArgument(f"need pairs >= 1 and high >= 0, got {pairs} and {high}")
    bound = CATALOG[name]
    ful = f_ul or UniqueLinkage(kind="polynomial")
    rng = np.random.default_rng(seed)
    report = MonotonicityReport(name)
    for _ in range(pairs):
        low, up = _ordered_pair(bound, rng, high)
        try:
            lo = evaluate(name, BoundParams(**low, constants=constants or {}, f_ul=ful), max_bits)
            hi = evaluate(name, BoundParams(**up, constants=constants or {}, f_ul=ful), max_bits)
        except ResourceLimit:
            report.skipped += 1
            continue
        report.checked += 1
        if hi < lo:
            report.violations.append((low, up, lo, hi))
    logger.debug("monotonicity of %s: %d pairs checked, %d skipped, %d violations",
                 name, report.checked, report.skipped, len(report.violations))
    return report
