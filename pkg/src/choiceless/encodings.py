"""Bijective codecs between the naturals and finite structures over them.

Three codecs, each a bijection with an explicit inverse:

* ``fin``  -- finite subsets of N, via binary expansion;
* ``seq``  -- finite sequences over N, via iterated pairing
  (empty sequence to 0, append via pair-then-successor);
* ``Seq``  -- finite sequences without repetition, via a rank-reduction
  bijection onto arbitrary sequences composed with the seq codec.

``lift`` transports each codec to the carrier of an infinite ordinal
notation (all notations below it), routed through the canonical
enumeration of notations.  ``cantor_bernstein`` turns a pair of opposed
injections on finite carriers into an explicit bijection by chain
classification.
"""

from __future__ import annotations

from math import isqrt
from typing import Callable, Hashable, Iterable, Sequence

from .ordinals import OrdCNF, compare, notations_of_weight_below, weight


class NotInjectiveError(ValueError):
    """Input violates a pairwise-distinctness requirement; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ChainUndecidedError(RuntimeError):
    """A back-and-forth chain chase ran out of budget."""


# --- fin: finite subsets of N ----------------------------------------------

def fin_encode(elements: Iterable[int]) -> int:
    """Sum of 2^e over the set; strictly increasing input enforced."""
    code = 0
    prev = -1
    for e in elements:
        if e <= prev:
            raise ValueError("finite-set code must be strictly increasing")
        code += 1 << e
        prev = e
    return code


def fin_decode(n: int) -> tuple[int, ...]:
    if n < 0:
        raise ValueError("code must be a natural number")
    out = []
    bit = 0
    while n:
        if n & 1:
            out.append(bit)
        n >>= 1
        bit += 1
    return tuple(out)


# --- seq: finite sequences over N ------------------------------------------

def pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def unpair(m: int) -> tuple[int, int]:
    s = (isqrt(8 * m + 1) - 1) // 2
    b = m - s * (s + 1) // 2
    return s - b, b


def seq_encode(entries: Sequence[int]) -> int:
    code = 0
    for a in entries:
        if a < 0:
            raise ValueError("entries must be naturals")
        code = pair(code, a) + 1
    return code


def seq_decode(n: int) -> tuple[int, ...]:
    if n < 0:
        raise ValueError("code must be a natural number")
    out = []
    while n:
        n, a = unpair(n - 1)
        out.append(a)
    out.reverse()
    return tuple(out)


# --- Seq: sequences without repetition -------------------------------------

def inj_reduce(entries: Sequence[int]) -> tuple[int, ...]:
    """Replace each entry by its rank among the still-unused naturals."""
    seen: list[int] = []
    out = []
    for i, a in enumerate(entries):
        if a in seen:
            raise NotInjectiveError(
                f"entry {a} repeats at position {i}", witness=(seen.index(a), i))
        out.append(a - sum(1 for s in seen if s < a))
        seen.append(a)
    return tuple(out)


def inj_expand(entries: Sequence[int]) -> tuple[int, ...]:
    """Inverse of inj_reduce: entry b picks the (b+1)-th unused natural."""
    used: list[int] = []
    out = []
    for b in entries:
        if b < 0:
            raise ValueError("entries must be naturals")
        candidate = b
        for u in sorted(used):
            if u <= candidate:
                candidate += 1
        out.append(candidate)
        used.append(candidate)
    return tuple(out)


def inj_encode(entries: Sequence[int]) -> int:
    return seq_encode(inj_reduce(entries))


def inj_decode(n: int) -> tuple[int, ...]:
    return inj_expand(seq_decode(n))


# --- lifting to an ordinal carrier ------------------------------------------

class CarrierIndex:
    """Bijection between {notations below alpha} and N for infinite alpha.

    The carrier is enumerated weight class by weight class, each class in
    the canonical generation order, so small notations get small codes.
    At alpha = w the bijection is the identity on the finite ordinals.
    """

    def __init__(self, alpha: OrdCNF):
        if alpha.is_finite():
            raise ValueError(
                "an infinite ordinal is required: for finite alpha no such bijection exists")
        self.alpha = alpha
        self._members: list[OrdCNF] = []
        self._rank: dict[OrdCNF, int] = {}
        self._next_weight = 0

    def _grow(self) -> None:
        for beta in notations_of_weight_below(self._next_weight, self.alpha):
            self._rank[beta] = len(self._members)
            self._members.append(beta)
        self._next_weight += 1

    def to_nat(self, beta: OrdCNF) -> int:
        if compare(beta, self.alpha) >= 0:
            raise ValueError(f"{beta} is not below {self.alpha}")
        while self._next_weight <= weight(beta):
            self._grow()
        return self._rank[beta]

    def from_nat(self, m: int) -> OrdCNF:
        if m < 0:
            raise ValueError("index must be a natural number")
        while len(self._members) <= m:
            self._grow()
        return self._members[m]


_codecs: dict[str, tuple[Callable, Callable]] = {
    "fin": (fin_encode, fin_decode),
    "seq": (seq_encode, seq_decode),
    "Seq": (inj_encode, inj_decode),
}


def lift_decode(alpha: OrdCNF, which: str, beta: OrdCNF,
                index: CarrierIndex | None = None):
    """Map a notation below alpha to the finite structure it codes."""
    encode, decode = _codecs[which]
    idx = index or CarrierIndex(alpha)
    return tuple(idx.from_nat(m) for m in decode(idx.to_nat(beta)))


def lift_encode(alpha: OrdCNF, which: str, structure: Sequence[OrdCNF],
                index: CarrierIndex | None = None) -> OrdCNF:
    """Map a finite structure over the carrier of alpha back to a notation."""
    encode, decode = _codecs[which]
    idx = index or CarrierIndex(alpha)
    return idx.from_nat(encode([idx.to_nat(beta) for beta in structure]))


def lift(alpha: OrdCNF, which: str, direction: str, value,
         index: CarrierIndex | None = None):
    if which not in _codecs:
        raise ValueError(f"codec must be one of {sorted(_codecs)}, got {which!r}")
    if direction == "decode":
        return lift_decode(alpha, which, value, index)
    if direction == "encode":
        return lift_encode(alpha, which, value, index)
    raise ValueError(f"direction must be 'encode' or 'decode', got {direction!r}")


# --- Cantor-Bernstein on decidable carriers ---------------------------------

def cantor_bernstein(
    x_carrier: Sequence[Hashable],
    y_carrier: Sequence[Hashable],
    f: Callable[[Hashable], Hashable],
    g: Callable[[Hashable], Hashable],
) -> dict:
    """Explicit bijection X -> Y from injections f: X -> Y and g: Y -> X.

    Both carriers are finite and explicitly listed.  Elements whose
    backward chain stops in Y are sent through g inverse; everything else
    (chains stopping in X, and cycles) goes through f.  Non-injective or
    off-carrier inputs raise NotInjectiveError / ValueError with a witness;
    if the carriers have different sizes the two injections cannot both
    exist, and whichever is broken is reported.
    """
    xs = list(x_carrier)
    ys = list(y_carrier)
    y_set = set(ys)
    x_set = set(xs)
    f_map: dict = {}
    f_inv: dict = {}
    for x in xs:
        y = f(x)
        if y not in y_set:
            raise ValueError(f"f({x!r}) = {y!r} is outside the target carrier")
        if y in f_inv:
            raise NotInjectiveError(
                f"f maps {f_inv[y]!r} and {x!r} to {y!r}", witness=(f_inv[y], x))
        f_map[x] = y
        f_inv[y] = x
    g_map: dict = {}
    g_inv: dict = {}
    for y in ys:
        x = g(y)
        if x not in x_set:
            raise ValueError(f"g({y!r}) = {x!r} is outside the target carrier")
        if x in g_inv:
            raise NotInjectiveError(
                f"g maps {g_inv[x]!r} and {y!r} to {x!r}", witness=(g_inv[x], y))
        g_map[y] = x
        g_inv[x] = y

    # both injections validated, so the carriers must be equinumerous
    assert len(xs) == len(ys)

    out: dict = {}
    for x in xs:
        if _chain_stops_in_y(x, f_inv, g_inv):
            out[x] = g_inv[x]
        else:
            out[x] = f_map[x]
    return out


def _chain_stops_in_y(x, f_inv: dict, g_inv: dict, budget: int | None = None) -> bool:
    """Chase x's ancestry backwards; True iff the chain starts in Y.

    Cycles are finite on finite carriers and count as not-stopping-in-Y.
    """
    start = x
    steps = 0
    current = x
    side_x = True
    while True:
        if budget is not None and steps > budget:
            raise ChainUndecidedError(f"chain undecided after {budget} steps from {start!r}")
        if side_x:
            if current not in g_inv:
                return False
            current = g_inv[current]
            side_x = False
        else:
            if current not in f_inv:
                return True
            current = f_inv[current]
            side_x = True
        steps += 1
        if side_x and current == start:
            return False  # cycle
        if budget is None and steps > 2 * (len(f_inv) + len(g_inv)) + 2:
            return False  # cycle not passing through start's side marker


def cantor_bernstein_value(
    x: Hashable,
    f: Callable[[Hashable], Hashable],
    f_preimage: Callable[[Hashable], Hashable | None],
    g_preimage: Callable[[Hashable], Hashable | None],
    budget: int,
) -> Hashable:
    """Value of the back-and-forth bijection at x without listing carriers.

    ``f_preimage`` / ``g_preimage`` answer partial inverse queries (None for
    "not in the image"); the chain chase is capped by ``budget`` and raises
    ChainUndecidedError past it.
    """
    current = x
    side_x = True
    g_pre_of_x = g_preimage(x)
    for _ in range(budget):
        if side_x:
            pre = g_preimage(current)
            if pre is None:
                return f(x)  # chain stops in X
            current = pre
            side_x = False
        else:
            pre = f_preimage(current)
            if pre is None:
                return g_pre_of_x  # chain stops in Y
            current = pre
            side_x = True
        if side_x and current == x:
            return f(x)  # cycle
    raise ChainUndecidedError(f"chain undecided after {budget} steps from {x!r}")
