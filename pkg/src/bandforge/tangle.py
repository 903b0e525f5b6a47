"""Continued-fraction and two-bridge arithmetic.

Conventions used throughout:

* A Conway form C(a_0, ..., a_k) is a nonempty list of nonzero integers,
  evaluated right to left as

      x = a_0 + 1/(a_1 + 1/(... + 1/a_k)).

  Evaluation is done with the integer recurrence (p, q) <- (a*p + q, p)
  starting from (a_k, 1), so the formal value 1/0 propagates without any
  division and the result is always in lowest terms.

* S(p, q) denotes the two-bridge link with 0 < q < p, gcd(p, q) = 1.
  Two normalized pairs describe the same unoriented link iff p = p' and
  q' = q or q*q' = 1 (mod p).  Mirrors are NOT identified: the mirror of
  S(p, q) is S(p, p - q).

* Knot signatures follow the convention sigma(S(5,1)) = -4, i.e. the
  torus knot T(2, 2k+1) = S(2k+1, 1) has signature -2k.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from operator import index
from typing import Optional

ConwayForm = tuple  # tuple of nonzero ints


@dataclass(frozen=True)
class Fraction:
    """Reduced fraction p/q; (1, 0) encodes the formal value 1/0."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise ValueError("fraction 0/0 is not a value")
        if gcd(abs(self.p), abs(self.q)) != 1:
            raise ValueError(f"fraction {self.p}/{self.q} not reduced")
        if self.q < 0 or (self.q == 0 and self.p < 0):
            raise ValueError(f"fraction {self.p}/{self.q} not sign-normalized")

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class TwoBridge:
    """Normalized Schubert pair S(p, q) with 0 < q < p, gcd(p, q) = 1."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"S({self.p},{self.q}): p must be >= 2")
        if not 0 < self.q < self.p:
            raise ValueError(f"S({self.p},{self.q}): q must lie in (0, p)")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"S({self.p},{self.q}): p, q not coprime")

    def __str__(self):
        return f"S({self.p},{self.q})"


def check_conway(cf) -> ConwayForm:
    """Validate and freeze a Conway form (nonempty, all entries nonzero)."""
    try:
        entries = tuple(index(a) for a in cf)
    except TypeError:
        raise ValueError(f"Conway form {list(cf)} has a non-integer entry") from None
    if not entries:
        raise ValueError("Conway form must be nonempty")
    if any(a == 0 for a in entries):
        raise ValueError(f"Conway form {list(entries)} has a zero entry")
    return entries


def eval_conway(cf) -> Fraction:
    """Evaluate C(a_0, ..., a_k) to a reduced fraction.

    Right-to-left nesting: x = a_0 + 1/(a_1 + 1/(... + 1/a_k)).  Internal
    zeros propagate projectively, so e.g. C(1, 1, -1) evaluates to 1/0.
    """
    entries = check_conway(cf)
    p, q = entries[-1], 1
    for a in reversed(entries[:-1]):
        p, q = a * p + q, p
    # gcd(p, q) = 1 is preserved by the recurrence; only fix signs
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    if q == 0:
        return Fraction(1, 0)
    return Fraction(p, q)


def conway_expand(p: int, q: int) -> ConwayForm:
    """Inverse of eval_conway up to two-bridge equivalence.

    Reduces the fraction, normalizes q mod p into (0, p), then runs the
    nearest-integer continued fraction (ties rounded away from zero).
    The output evaluates to normalize_two_bridge(p, q) exactly.
    """
    g = gcd(abs(p), abs(q))
    if g > 1:
        p, q = p // g, q // g
    tb = normalize_two_bridge(p, q)
    num, den = tb.p, tb.q
    entries = []
    while True:
        # nearest integer to num/den, ties away from zero; den > 0 here
        a = (2 * num + den) // (2 * den) if num >= 0 else -((-2 * num + den) // (2 * den))
        entries.append(a)
        r_num, r_den = num - a * den, den  # remainder, |r| <= 1/2
        if r_num == 0:
            break
        num, den = r_den, r_num  # x <- 1/r
        if den < 0:
            num, den = -num, -den
    return check_conway(entries)


def normalize_two_bridge(p: int, q: int) -> TwoBridge:
    """Reduce S(p, q) to the canonical representative with q in (0, p).

    Negative p flips both signs first (p/q and -p/-q present the same link).
    """
    if p < 0:
        p, q = -p, -q
    if p < 2:
        raise ValueError(f"S({p},{q}): |p| must be >= 2")
    if q % p == 0:
        raise ValueError(f"S({p},{q}): q is degenerate mod p")
    if gcd(p, abs(q)) != 1:
        raise ValueError(f"S({p},{q}): p, q not coprime")
    return TwoBridge(p, q % p)


def two_bridge_from_fraction(fr: Fraction) -> TwoBridge:
    """Interpret a Conway-form value as a two-bridge link.

    Negative numerators flip both signs (p/q and -p/-q present the same
    link); p in {0, 1} or the formal 1/0 has no two-bridge meaning.
    """
    p, q = fr.p, fr.q
    if p < 0:
        p, q = -p, -q
    if q == 0 or p < 2:
        raise ValueError(f"fraction {fr} does not define a two-bridge link")
    return normalize_two_bridge(p, q)


def two_bridge_equivalent(a: TwoBridge, b: TwoBridge) -> bool:
    """Unoriented two-bridge equivalence: same p and q' = q or qq' = 1 mod p."""
    return a.p == b.p and (a.q == b.q or (a.q * b.q) % a.p == 1)


def mirror_two_bridge(tb: TwoBridge) -> TwoBridge:
    """Mirror image: S(p, q) -> S(p, p - q)."""
    return TwoBridge(tb.p, tb.p - tb.q)


def is_unlinking_number_one(tb: TwoBridge) -> Optional[tuple]:
    """Witness (n, m) with tb equivalent to S(2n^2, 2nm+1) or S(2n^2, 2nm-1).

    Only two-component links (p even) qualify; returns None when p is not
    twice a square or no coprime m in the admissible range works.
    """
    if tb.p % 2 != 0:
        raise ValueError(f"{tb}: unlinking classification needs p even (a link)")
    n = isqrt(tb.p // 2)
    if 2 * n * n != tb.p:
        return None
    for m in range(1, n + 1):
        if gcd(m, n) != 1:
            continue
        for sign in (1, -1):
            q = 2 * n * m + sign
            if 0 < q < tb.p and two_bridge_equivalent(tb, TwoBridge(tb.p, q)):
                return (n, m)
    return None


def cosmetic_band_partner(cf) -> ConwayForm:
    """Flip the middle entry of an antisymmetric +-2 palindrome.

    The input must have odd length 2k+3 with shape
    (a_0, ..., a_k, +-2, -a_k, ..., -a_0); k = -1 (the bare form [+-2])
    is allowed.  Output is the same form with the middle entry negated.
    """
    entries = check_conway(cf)
    if len(entries) % 2 == 0:
        raise ValueError(f"{list(entries)}: palindrome must have odd length")
    mid = len(entries) // 2
    if abs(entries[mid]) != 2:
        raise ValueError(f"{list(entries)}: middle entry must be +-2")
    for i in range(mid):
        if entries[i] != -entries[-1 - i]:
            raise ValueError(
                f"{list(entries)}: entries {i} and {len(entries)-1-i} "
                "are not antisymmetric")
    return entries[:mid] + (-entries[mid],) + entries[mid + 1:]


def verify_chirally_cosmetic(cf) -> bool:
    """Does flipping the middle +-2 yield the mirror of the original link?

    Degenerate palindromes evaluating to 0/1 denote the two-component
    unlink, which is its own mirror; both members of such a pair must
    evaluate to 0.
    """
    entries = check_conway(cf)
    fr = eval_conway(entries)
    fr_partner = eval_conway(cosmetic_band_partner(entries))
    if fr.p == 0 or fr_partner.p == 0:
        return fr.p == 0 and fr_partner.p == 0
    tb = two_bridge_from_fraction(fr)
    partner = two_bridge_from_fraction(fr_partner)
    return two_bridge_equivalent(partner, mirror_two_bridge(tb))


def _even_continued_fraction(p: int, q: int) -> list:
    """All-even continued fraction of p/q' under v = c - 1/w.

    q' is the even representative of q mod p in (-p, p); each c is the
    nearest even integer to the current value.  For p odd this greedy
    choice never meets a tie, never produces c = 0, and terminates with
    an even number of entries.
    """
    num = p
    den = q if q % 2 == 0 else q - p
    entries = []
    while True:
        if den < 0:
            num, den = -num, -den
        # nearest even integer: 2 * round(num / (2 den)), exact in ints
        c = 2 * ((num + den) // (2 * den))
        entries.append(c)
        # w = 1/(c - v): new value den / (c*den - num)
        nden = c * den - num
        if nden == 0:
            break
        num, den = den, nden
    return entries


def signature_two_bridge(tb: TwoBridge) -> int:
    """Signature of the two-bridge knot S(p, q), p odd.

    Expands p/q into an all-even continued fraction [c_1, ..., c_n] and
    returns the signature of the tridiagonal form with diagonal c_i and
    off-diagonal 1 (the symmetrized Seifert form of the associated plumbing).
    The leading principal minors satisfy |d_i| > |d_{i-1}| since every
    |c_i| >= 2, so no minor vanishes and Jacobi's sign-change count applies.
    """
    if tb.p % 2 == 0:
        raise ValueError(f"{tb}: signature needs p odd (a knot)")
    cs = _even_continued_fraction(tb.p, tb.q)
    assert all(c != 0 and c % 2 == 0 for c in cs) and len(cs) % 2 == 0
    d_prev, d = 1, cs[0]
    sig = 1 if d > 0 else -1
    for c in cs[1:]:
        d_prev, d = d, c * d - d_prev
        sig += 1 if d_prev * d > 0 else -1
    assert abs(d) == tb.p and sig % 2 == 0
    return sig


def four_move_signature_obstruction(a: TwoBridge, b: TwoBridge) -> bool:
    """True iff |sigma(a) - sigma(b)| > 4, so no single 4-move relates them."""
    return abs(signature_two_bridge(a) - signature_two_bridge(b)) > 4
