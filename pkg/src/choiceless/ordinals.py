"""Ordinal notations below epsilon-zero in Cantor Normal Form.

A notation is a finite sum  w^e0*k0 + w^e1*k1 + ... + w^em*km  with the
exponents themselves notations, strictly decreasing, and the coefficients
positive integers.  The empty sum is 0; a single term with exponent 0 is a
positive integer.  Values are immutable and hashable; all operations are
pure functions.

Besides comparison and (left-absorbing) addition, the module provides the
leading-term collapse ``reverse`` and a canonical bijection between
notations and the naturals (``nat_index`` / ``unindex``), enumerated
breadth-first by notation weight so that small ordinals get small codes.
"""

from __future__ import annotations

from typing import Iterator


class MalformedOrdinalError(ValueError):
    """Raised for term lists that are not a valid normal form."""


class EnumerationLimitError(RuntimeError):
    """Raised when indexing would require enumerating too many notations."""


class OrdCNF:
    """An ordinal below epsilon-zero as a tuple of (exponent, coefficient) terms."""

    __slots__ = ("terms",)

    terms: tuple[tuple["OrdCNF", int], ...]

    def __init__(self, terms: tuple[tuple["OrdCNF", int], ...] = ()):
        terms = tuple(terms)
        prev = None
        for exp, coeff in terms:
            if not isinstance(exp, OrdCNF):
                raise MalformedOrdinalError(f"exponent must be OrdCNF, got {exp!r}")
            if not isinstance(coeff, int) or coeff < 1:
                raise MalformedOrdinalError(f"coefficient must be a positive int, got {coeff!r}")
            if prev is not None and compare(prev, exp) <= 0:
                raise MalformedOrdinalError("exponents must be strictly decreasing")
            prev = exp
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("OrdCNF is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def as_int(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_finite():
            raise ValueError(f"{self} is not a finite ordinal")
        return self.terms[0][1]

    def __eq__(self, other) -> bool:
        return isinstance(other, OrdCNF) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(("OrdCNF", self.terms))

    def __lt__(self, other) -> bool:
        return compare(self, other) < 0

    def __le__(self, other) -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other) -> bool:
        return compare(self, other) > 0

    def __ge__(self, other) -> bool:
        return compare(self, other) >= 0

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"OrdCNF<{format_ordinal(self)}>"


ZERO = OrdCNF()
ONE = OrdCNF(((ZERO, 1),))
OMEGA = OrdCNF(((ONE, 1),))


def from_int(n: int) -> OrdCNF:
    if n < 0:
        raise MalformedOrdinalError("ordinals are non-negative")
    return ZERO if n == 0 else OrdCNF(((ZERO, n),))


def omega_power(exp: OrdCNF, coeff: int = 1) -> OrdCNF:
    return OrdCNF(((exp, coeff),))


def compare(a: OrdCNF, b: OrdCNF) -> int:
    """Total order on notations, agreeing with ordinal order: -1, 0 or 1."""
    for (ea, ka), (eb, kb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ka != kb:
            return -1 if ka < kb else 1
    la, lb = len(a.terms), len(b.terms)
    # a proper prefix only adds smaller terms on the longer side
    return 0 if la == lb else (-1 if la < lb else 1)


def add(a: OrdCNF, b: OrdCNF) -> OrdCNF:
    """Ordinal sum a + b; terms of a below b's leading exponent are absorbed."""
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    head = b.terms[0][0]
    cut = 0
    while cut < len(a.terms) and compare(a.terms[cut][0], head) > 0:
        cut += 1
    if cut < len(a.terms) and a.terms[cut][0] == head:
        merged = ((head, a.terms[cut][1] + b.terms[0][1]),)
        return OrdCNF(a.terms[:cut] + merged + b.terms[1:])
    return OrdCNF(a.terms[:cut] + b.terms)


def reverse(a: OrdCNF) -> OrdCNF:
    """Collapse to the leading term: the sum of the terms in increasing order."""
    if a.is_zero():
        raise ValueError("reverse is undefined for 0")
    return OrdCNF((a.terms[0],))


def weight(a: OrdCNF) -> int:
    """Graded size of a notation: each term contributes weight(exponent) + coefficient."""
    return sum(weight(exp) + coeff for exp, coeff in a.terms)


# Enumeration state: _classes[w] lists all notations of weight w in canonical
# order; _cum[w] counts notations of weight < w; _position maps a notation to
# its index within its weight class.
_classes: list[list[OrdCNF]] = []
_cum: list[int] = [0]
_position: dict[OrdCNF, int] = {}

ENUMERATION_CAP = 5_000_000


def _term_lists(w: int, bound: OrdCNF | None) -> Iterator[tuple[tuple[OrdCNF, int], ...]]:
    """All decreasing term lists of total weight w, leading exponent below bound."""
    for u in range(w):
        exps = _weight_class(u) if bound is None else notations_of_weight_below(u, bound)
        for exp in exps:
            for coeff in range(1, w - u + 1):
                rest = w - u - coeff
                if rest == 0:
                    yield ((exp, coeff),)
                else:
                    for tail in _term_lists(rest, exp):
                        yield ((exp, coeff),) + tail


def _weight_class(w: int) -> list[OrdCNF]:
    while len(_classes) <= w:
        target = len(_classes)
        if target == 0:
            members = [ZERO]
        else:
            members = [OrdCNF(ts) for ts in _term_lists(target, None)]
        for i, a in enumerate(members):
            _position[a] = i
        _classes.append(members)
        _cum.append(_cum[-1] + len(members))
        if _cum[-1] > ENUMERATION_CAP:
            raise EnumerationLimitError(
                f"more than {ENUMERATION_CAP} notations enumerated (weight {target})")
    return _classes[w]


def nat_index(a: OrdCNF) -> int:
    """Position of a notation in the canonical enumeration; 0 maps to 0."""
    w = weight(a)
    _weight_class(w)
    return _cum[w] + _position[a]


def unindex(n: int) -> OrdCNF:
    """Inverse of nat_index: the n-th notation in the canonical enumeration."""
    if n < 0:
        raise ValueError("index must be a natural number")
    w = 0
    while True:
        cls = _weight_class(w)
        if n < _cum[w] + len(cls):
            return cls[n - _cum[w]]
        w += 1


def _bounded_term_lists(w: int, bound: OrdCNF) -> Iterator[tuple[tuple[OrdCNF, int], ...]]:
    """Weight-w term lists denoting notations strictly below ``bound``.

    Prunes by the leading term instead of filtering a full weight class, so
    sparse carriers (for example the finite ordinals below w) stay cheap.
    """
    if bound.is_zero() or w == 0:
        return
    head_exp, head_coeff = bound.terms[0]
    rest_bound = OrdCNF(bound.terms[1:])
    # leading exponent strictly below the bound's
    for u in range(w):
        for exp in notations_of_weight_below(u, head_exp):
            for coeff in range(1, w - u + 1):
                tail_w = w - u - coeff
                if tail_w == 0:
                    yield ((exp, coeff),)
                else:
                    for tail in _term_lists(tail_w, exp):
                        yield ((exp, coeff),) + tail
    # leading exponent equal: decided by coefficient, then by the rest
    u = weight(head_exp)
    if u > w - 1:
        return
    for coeff in range(1, min(head_coeff - 1, w - u) + 1):
        tail_w = w - u - coeff
        if tail_w == 0:
            yield ((head_exp, coeff),)
        else:
            for tail in _term_lists(tail_w, head_exp):
                yield ((head_exp, coeff),) + tail
    tail_w = w - u - head_coeff
    if tail_w < 0 or rest_bound.is_zero():
        return
    if tail_w == 0:
        yield ((head_exp, head_coeff),)
    else:
        for tail in _bounded_term_lists(tail_w, rest_bound):
            yield ((head_exp, head_coeff),) + tail


_below_cache: dict[tuple[int, OrdCNF], list[OrdCNF]] = {}


def notations_of_weight_below(w: int, bound: OrdCNF) -> list[OrdCNF]:
    """All weight-w notations strictly below ``bound``, in a fixed order."""
    key = (w, bound)
    cached = _below_cache.get(key)
    if cached is None:
        if w == 0:
            cached = [ZERO] if not bound.is_zero() else []
        else:
            cached = [OrdCNF(ts) for ts in _bounded_term_lists(w, bound)]
        _below_cache[key] = cached
    return cached


# --- text syntax -----------------------------------------------------------
#
# expr   := term ('+' term)*
# term   := NAT | 'w' ('^' factor)? ('*' NAT)?
# factor := NAT | 'w' | '(' expr ')'


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch in "w^*+()":
            tokens.append(ch)
            i += 1
        else:
            raise MalformedOrdinalError(f"unexpected character {ch!r} at position {i}")
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise MalformedOrdinalError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise MalformedOrdinalError(f"expected {tok!r}, got {got!r}")

    def parse_expr(self) -> OrdCNF:
        if self.peek() == "0":
            self.take()
            if self.peek() in (None, ")"):
                return ZERO
            raise MalformedOrdinalError("zero cannot appear as a summand")
        terms = [self.parse_term()]
        while self.peek() == "+":
            self.take()
            terms.append(self.parse_term())
        try:
            return OrdCNF(tuple(terms))
        except MalformedOrdinalError as exc:
            raise MalformedOrdinalError(f"not a normal form: {exc}") from None

    def parse_term(self) -> tuple[OrdCNF, int]:
        tok = self.take()
        if tok.isdigit():
            value = int(tok)
            if value < 1:
                raise MalformedOrdinalError("zero cannot appear as a summand")
            return (ZERO, value)
        if tok != "w":
            raise MalformedOrdinalError(f"expected a term, got {tok!r}")
        exp = ONE
        if self.peek() == "^":
            self.take()
            exp = self.parse_factor()
        coeff = 1
        if self.peek() == "*":
            self.take()
            num = self.take()
            if not num.isdigit() or int(num) < 1:
                raise MalformedOrdinalError(f"coefficient must be a positive integer, got {num!r}")
            coeff = int(num)
        return (exp, coeff)

    def parse_factor(self) -> OrdCNF:
        tok = self.peek()
        if tok == "(":
            self.take()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if tok == "w":
            self.take()
            return OMEGA
        if tok is not None and tok.isdigit():
            self.take()
            return from_int(int(tok))
        raise MalformedOrdinalError(f"expected an exponent, got {tok!r}")


def parse_ordinal(text: str) -> OrdCNF:
    """Parse the CLI syntax, e.g. '0', '5', 'w', 'w^2*3 + w + 4', 'w^(w+1)'."""
    if not text.strip():
        raise MalformedOrdinalError("empty input")
    parser = _Parser(_tokenize(text))
    result = parser.parse_expr()
    if parser.peek() is not None:
        raise MalformedOrdinalError(f"trailing input at token {parser.pos}: {parser.peek()!r}")
    return result


def format_ordinal(a: OrdCNF) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp.is_zero():
            parts.append(str(coeff))
            continue
        if exp == ONE:
            body = "w"
        elif exp.is_finite():
            body = f"w^{exp.as_int()}"
        elif exp == OMEGA:
            body = "w^w"
        else:
            body = f"w^({format_ordinal(exp)})"
        if coeff > 1:
            body += f"*{coeff}"
        parts.append(body)
    return " + ".join(parts)
