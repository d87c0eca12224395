"""Exact arithmetic for the injective-sequence count over an n-element set.

``star(n)`` counts the sequences without repetition (the empty one
included) that an n-element set carries.  The primary computation is the
recurrence  star(n) = n*star(n-1) + 1, star(0) = 1;  the closed factorial
sum is kept alongside as an independent cross-check.  The remaining
operations verify the 2-adic facts the diagonalization engines lean on:
parity, the power-of-two scan, the divisibility lemma for small powers of
two, a congruence splitting star(n + 2^k) modulo 2^(k+1), and the gap
fact for consecutive powers of two.

Everything is exact; no floats are consulted for any verdict.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Iterator


def worker_count() -> int:
    """Worker bound for partitionable sweeps, from CHOICELESS_THREADS."""
    raw = os.environ.get("CHOICELESS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class LemmaReport:
    """Machine-readable outcome of a verification sweep."""

    claim: str
    params: dict
    status: str  # confirmed | counterexample | vacuous
    details: dict = field(default_factory=dict)
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.status != "counterexample"

    def as_dict(self) -> dict:
        out = {
            "claim": self.claim,
            "range": self.params,
            "status": self.status,
            "details": self.details,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def star(n: int) -> int:
    """Number of injective sequences over an n-set, by the recurrence."""
    if n < 0:
        raise ValueError("n must be a natural number")
    value = 1
    for i in range(1, n + 1):
        value = i * value + 1
    return value


def star_by_factorial_sum(n: int) -> int:
    """Closed form: sum of n!/i! for i = 0..n."""
    f = factorial(n)
    return sum(f // factorial(i) for i in range(n + 1))


def star_stream(limit: int) -> Iterator[tuple[int, int]]:
    """Yield (n, star(n)) for n = 0..limit, sharing the running value."""
    value = 1
    yield 0, value
    for n in range(1, limit + 1):
        value = n * value + 1
        yield n, value


def star_mod(n: int, modulus: int) -> int:
    """star(n) modulo a power of two, streamed in O(n) time, O(1) space."""
    _require_power_of_two_modulus(modulus)
    value = 1 % modulus
    for i in range(1, n + 1):
        value = (i * value + 1) % modulus
    return value


def star_mod_stream(modulus: int, limit: int) -> Iterator[tuple[int, int]]:
    """Yield (n, star(n) mod modulus) for n = 0..limit."""
    _require_power_of_two_modulus(modulus)
    value = 1 % modulus
    yield 0, value
    for n in range(1, limit + 1):
        value = (n * value + 1) % modulus
        yield n, value


def _require_power_of_two_modulus(modulus: int) -> None:
    if modulus < 2 or modulus & (modulus - 1):
        raise ValueError(f"modulus must be a power of two >= 2, got {modulus}")


def is_power_of_two(value: int) -> bool:
    """Single-set-bit test on an exact integer."""
    return value >= 1 and value & (value - 1) == 0


# star(n) fits in 64 bits up to here; beyond, a power of two must vanish
# mod 2^64, which the streaming filter detects before any exact check.
_EXACT_SMALL = 20
_FILTER_BITS = 64
_FILTER_MASK = (1 << _FILTER_BITS) - 1


def scan_pow2(limit: int) -> LemmaReport:
    """Exact scan for n <= limit with star(n) a power of two.

    Streams residues mod 2^64; a residue of zero (necessary for any power
    of two past the 64-bit range) escalates to the exact value, so every
    verdict is decided by the single-set-bit test on exact integers.
    """
    hits: list[int] = []
    escalations: list[int] = []
    exact = 1
    residue = 1
    for n in range(limit + 1):
        if n:
            residue = (n * residue + 1) & _FILTER_MASK
            if n <= _EXACT_SMALL:
                exact = n * exact + 1
        if n <= _EXACT_SMALL:
            if is_power_of_two(exact):
                hits.append(n)
        elif residue == 0:
            escalations.append(n)
            if is_power_of_two(star(n)):
                hits.append(n)
    return LemmaReport(
        claim="star(n) is a power of two only at the listed n",
        params={"limit": limit},
        status="confirmed",
        details={"hits": hits, "exact_escalations": escalations},
    )


def check_divisibility_lemma(r: int, limit: int) -> LemmaReport:
    """For n <= limit with 2^r | star(n): 2^r | star(n + 2^r) and
    2^r does not divide star(n + t) for 0 < t < 2^r."""
    if not 1 <= r <= 4:
        raise ValueError("r must be between 1 and 4")
    modulus = 1 << r
    residues = [res for _, res in star_mod_stream(modulus, limit + modulus)]
    premise_at: list[int] = []
    for n in range(limit + 1):
        if residues[n] != 0:
            continue
        premise_at.append(n)
        if residues[n + modulus] != 0:
            return LemmaReport(
                claim="divisibility step fails",
                params={"r": r, "limit": limit},
                status="counterexample",
                counterexample={"n": n, "star_mod_at_step": residues[n + modulus]},
            )
        for t in range(1, modulus):
            if residues[n + t] == 0:
                return LemmaReport(
                    claim="divisibility gap fails",
                    params={"r": r, "limit": limit},
                    status="counterexample",
                    counterexample={"n": n, "t": t},
                )
    return LemmaReport(
        claim="2^r | star(n) implies 2^r | star(n + 2^r), and no n+t between",
        params={"r": r, "limit": limit},
        status="confirmed",
        details={"premise_count": len(premise_at), "premise_first": premise_at[:8]},
    )


def inner_sum(n: int, j: int) -> int:
    """Sum over i = j+1..n of n!/(i * j!); always an integer."""
    f = factorial(n)
    fj = factorial(j)
    total = 0
    for i in range(j + 1, n + 1):
        num, rem = divmod(f, i * fj)
        assert rem == 0
        total += num
    return total


def t_sum(n: int) -> int:
    """Double sum T(n) of n!/(i * j!) over 0 <= j < i <= n."""
    return sum(inner_sum(n, j) for j in range(n))


def check_identity_2(n: int, k: int) -> LemmaReport:
    """star(n + 2^k) == 2^k * T(n) + star(n)  modulo 2^(k+1), exactly."""
    if n < 2 or k < 2:
        raise ValueError("requires n >= 2 and k >= 2")
    modulus = 1 << (k + 1)
    lhs = star(n + (1 << k)) % modulus
    rhs = ((1 << k) * t_sum(n) + star(n)) % modulus
    if lhs != rhs:
        return LemmaReport(
            claim="congruence for star(n + 2^k) mod 2^(k+1)",
            params={"n": n, "k": k},
            status="counterexample",
            counterexample={"lhs": lhs, "rhs": rhs},
        )
    return LemmaReport(
        claim="congruence for star(n + 2^k) mod 2^(k+1)",
        params={"n": n, "k": k},
        status="confirmed",
        details={"residue": lhs},
    )


def _identity_2_ok(args: tuple[int, int]) -> tuple[int, int, bool]:
    n, k = args
    return n, k, check_identity_2(n, k).ok


def sweep_identity_2(n_max: int, k_max: int, workers: int | None = None) -> LemmaReport:
    """check_identity_2 over all 2 <= n <= n_max, 2 <= k <= k_max."""
    cells = [(n, k) for n in range(2, n_max + 1) for k in range(2, k_max + 1)]
    workers = worker_count() if workers is None else max(1, workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_identity_2_ok, cells, chunksize=32))
    else:
        results = [_identity_2_ok(cell) for cell in cells]
    bad = [(n, k) for n, k, ok in results if not ok]
    if bad:
        return LemmaReport(
            claim="congruence sweep",
            params={"n_max": n_max, "k_max": k_max},
            status="counterexample",
            counterexample={"n": bad[0][0], "k": bad[0][1]},
        )
    return LemmaReport(
        claim="congruence sweep",
        params={"n_max": n_max, "k_max": k_max},
        status="confirmed",
        details={"cells": len(cells), "workers": workers},
    )


def check_t_parity(n: int) -> LemmaReport:
    """For odd n >= 3: the inner sum is odd exactly at j in {n-1, n-2, n-3},
    even for 0 <= j <= n-4; hence T(n) is odd."""
    if n < 3 or n % 2 == 0:
        raise ValueError("requires odd n >= 3")
    parities = [inner_sum(n, j) % 2 for j in range(n)]
    expected = [1 if j >= n - 3 else 0 for j in range(n)]
    failing = [j for j in range(n) if parities[j] != expected[j]]
    total_odd = sum(parities) % 2 == 1
    if failing or not total_odd:
        return LemmaReport(
            claim="per-term parity of the double sum",
            params={"n": n},
            status="counterexample",
            counterexample={"failing_j": failing, "total_odd": total_odd},
        )
    return LemmaReport(
        claim="per-term parity of the double sum",
        params={"n": n},
        status="confirmed",
        details={"odd_at": [j for j in range(n) if parities[j]]},
    )


def check_star_gap(n: int, t: int) -> LemmaReport:
    """Given star(n) = 2^k: if star(n + t) is a power of two then 2^k | t."""
    base = star(n)
    if not is_power_of_two(base):
        raise ValueError(f"star({n}) = {base} is not a power of two")
    if t < 1:
        raise ValueError("t must be positive")
    other = star(n + t)
    if not is_power_of_two(other):
        return LemmaReport(
            claim="power-of-two gap divisibility",
            params={"n": n, "t": t},
            status="vacuous",
            details={"star_n_plus_t_power_of_two": False},
        )
    if t % base != 0:
        return LemmaReport(
            claim="power-of-two gap divisibility",
            params={"n": n, "t": t},
            status="counterexample",
            counterexample={"base": base, "t": t},
        )
    return LemmaReport(
        claim="power-of-two gap divisibility",
        params={"n": n, "t": t},
        status="confirmed",
        details={"base": base},
    )


def check_star_gap_range(n: int, t_limit: int) -> LemmaReport:
    """check_star_gap over all 1 <= t <= t_limit in one incremental sweep."""
    base = star(n)
    if not is_power_of_two(base):
        raise ValueError(f"star({n}) = {base} is not a power of two")
    value = base
    confirmed: list[int] = []
    for t in range(1, t_limit + 1):
        value = (n + t) * value + 1
        if is_power_of_two(value):
            if t % base != 0:
                return LemmaReport(
                    claim="power-of-two gap divisibility",
                    params={"n": n, "t_limit": t_limit},
                    status="counterexample",
                    counterexample={"t": t, "base": base},
                )
            confirmed.append(t)
    return LemmaReport(
        claim="power-of-two gap divisibility",
        params={"n": n, "t_limit": t_limit},
        status="confirmed" if confirmed else "vacuous",
        details={"power_of_two_at_t": confirmed},
    )


def parity_law_report(limit: int) -> LemmaReport:
    """n is even iff star(n) is odd, for all n <= limit."""
    for n, residue in star_mod_stream(2, limit):
        if (n % 2 == 0) != (residue == 1):
            return LemmaReport(
                claim="n even iff star(n) odd",
                params={"limit": limit},
                status="counterexample",
                counterexample={"n": n, "star_mod_2": residue},
            )
    return LemmaReport(
        claim="n even iff star(n) odd",
        params={"limit": limit},
        status="confirmed",
    )
