"""Number-theoretic side: primality, quadratic residues, inertia degrees in
real cyclotomic subfields, prime scans with density bookkeeping, and the
admissible word-length residues mod 18."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .words import Shape

_MR_BASES = (2, 3, 5, 7, 11, 13, 17)
# Jaeschke: the bases above are a deterministic witness set below this bound.
_MR_LIMIT = 341_550_071_728_321

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid below 3.4e14."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise ValueError(f"{n} exceeds the deterministic primality bound {_MR_LIMIT}")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if limit < 2:
        return []
    sieve = bytearray((1,)) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, limit + 1) if sieve[i]]


def divisors(n: int) -> list[int]:
    """Sorted positive divisors."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def odd_prime_power(q: int) -> tuple[int, int]:
    """Decompose q = p^n with p an odd prime, or raise ValueError."""
    if q < 3 or q % 2 == 0:
        raise ValueError(f"{q} is not an odd prime power")
    p = q
    for cand in range(3, math.isqrt(q) + 1, 2):
        if q % cand == 0:
            p = cand
            break
    n = 0
    rest = q
    while rest % p == 0:
        rest //= p
        n += 1
    if rest != 1 or not is_prime(p):
        raise ValueError(f"{q} is not an odd prime power")
    return p, n


def is_square_mod(a: int, p: int) -> bool:
    """Euler criterion a^((p-1)/2) mod p; multiples of p count as squares."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    a %= p
    return a == 0 or pow(a, (p - 1) // 2, p) == 1


def multiplicative_order(a: int, n: int) -> int:
    if n < 1 or math.gcd(a, n) != 1:
        raise ValueError(f"order of {a} mod {n} undefined")
    if n <= 2:
        return 1
    acc = a % n
    f = 1
    while acc != 1:
        acc = acc * a % n
        f += 1
    return f


class RamifiedPrimeError(ValueError):
    """The prime shares a factor with the cyclotomic modulus, so the
    unramified inertia-degree computation does not apply."""


class CongruenceError(ValueError):
    """k_pm ≡ 1 (mod 3): the subfield for i = (2*k_pm+1)/3 is rational, its
    inertia degree is always 1, and no prime can satisfy the conditions."""


def inertia_degree(p: int, m: int, i: int) -> int:
    """Inertia degree of p in Q(zeta_m^i + zeta_m^(-i)).

    With d = m / gcd(m, i) the field is the maximal real subfield of the
    d-th cyclotomic field and the degree is the least f >= 1 with
    p^f ≡ ±1 (mod d); the degenerate rational case d <= 3 always gives 1.
    Raises RamifiedPrimeError when gcd(p, d) > 1.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"m must be odd and >= 3, got {m}")
    if not 1 <= i <= (m - 1) // 2:
        raise ValueError(f"i must lie in [1, {(m - 1) // 2}], got {i}")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    d = m // math.gcd(m, i)
    if d <= 2:
        return 1
    if math.gcd(p, d) != 1:
        raise RamifiedPrimeError(f"p={p} ramifies in the degree-{d} cyclotomic field")
    acc = p % d
    f = 1
    while acc != 1 and acc != d - 1:
        acc = acc * p % d
        f += 1
    return f


def necessary_congruence(k_pm: int) -> bool:
    """True iff k_pm mod 3 != 1, equivalently 3 does not divide 2*k_pm + 1."""
    if k_pm < 1:
        raise ValueError(f"k_pm must be >= 1, got {k_pm}")
    return k_pm % 3 != 1


def kpm(k: int, which: Shape) -> int:
    """Effective index: k for the x1^2 y_k shape, k - 1 for the two shapes
    whose trace agrees with x1^(-2) y_k (including x1^2 y_(-k))."""
    return k if which is Shape.X2_YK else k - 1


@dataclass(frozen=True)
class ConditionReport:
    """Structured verdict for the three non-surjectivity conditions."""

    p: int
    n: int
    k: int
    shape: Shape
    k_pm: int
    cond1: bool  # 2 is not a square mod p
    cond2: bool  # n is odd
    cond3: bool  # no inertia degree f_i divides n
    inertia_degrees: tuple[int, ...]

    @property
    def verdict(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "k": self.k,
            "shape": self.shape.value,
            "k_pm": self.k_pm,
            "cond1": self.cond1,
            "cond2": self.cond2,
            "cond3": self.cond3,
            "inertia_degrees": list(self.inertia_degrees),
            "verdict": self.verdict,
        }


def check_nonsurjectivity_conditions(
    p: int, n: int, k: int, which: Shape
) -> ConditionReport:
    """Evaluate exactly, for the word shape `which` at index k over F_(p^n):
    (1) 2 is a non-square mod p, (2) n is odd, (3) no inertia degree of p
    in Q(zeta^i + zeta^(-i)) for the (2*k_pm+1)-th roots divides n."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k_pm = kpm(k, which)
    if k_pm < 1:
        raise ValueError(
            f"shape {which.value} with k={k} has effective index {k_pm} < 1"
        )
    m = 2 * k_pm + 1
    if m % p == 0:
        raise RamifiedPrimeError(f"p={p} divides 2*k_pm+1={m}")
    degrees = tuple(inertia_degree(p, m, i) for i in range(1, k_pm + 1))
    return ConditionReport(
        p=p,
        n=n,
        k=k,
        shape=which,
        k_pm=k_pm,
        cond1=not is_square_mod(2, p),
        cond2=n % 2 == 1,
        cond3=all(n % f != 0 for f in degrees),
        inertia_degrees=degrees,
    )


def _fraction_decimal(fr: Fraction, places: int = 6) -> str:
    scaled = fr.numerator * 10**places
    val, rem = divmod(scaled, fr.denominator)
    if 2 * rem >= fr.denominator:
        val += 1
    whole, frac = divmod(val, 10**places)
    return f"{whole}.{frac:0{places}d}"


@dataclass(frozen=True)
class DensityReport:
    """Exact counts and the three densities for a prime scan."""

    k_pm: int
    x: int
    matching_prime_count: int
    total_prime_count: int
    empirical_density: Fraction
    printed_density: Fraction
    dirichlet_density: Fraction

    def to_dict(self) -> dict:
        out = {
            "k_pm": self.k_pm,
            "x": self.x,
            "matching_prime_count": self.matching_prime_count,
            "total_prime_count": self.total_prime_count,
        }
        for name in ("empirical_density", "printed_density", "dirichlet_density"):
            fr: Fraction = getattr(self, name)
            out[name] = f"{fr.numerator}/{fr.denominator}"
            out[name + "_decimal"] = _fraction_decimal(fr)
        return out


def scan_primes(k_pm: int, p_max: int) -> tuple[list[int], DensityReport]:
    """Primes p <= p_max with p ≡ 3, 5 (mod 8), p coprime to 2*k_pm+1, and
    p^2 not ≡ 1 modulo any divisor of 2*k_pm+1 larger than 1.

    Each kept prime is cross-validated by recomputing every inertia degree
    and requiring it to be at least 2.  The report carries the empirical
    density among all primes <= p_max next to the printed density
    (1/2)*prod(1 - 3/l) and the Dirichlet density (1/2)*prod((l-3)/(l-1))
    over the prime divisors l of 2*k_pm+1.
    """
    if p_max < 3:
        raise ValueError(f"p_max must be >= 3, got {p_max}")
    if not necessary_congruence(k_pm):
        raise CongruenceError(
            f"k_pm={k_pm} is 1 mod 3: 2*k_pm+1 is divisible by 3, the real "
            f"subfield for i=(2*k_pm+1)/3 is rational, and its inertia degree "
            f"is always 1, so no prime qualifies"
        )
    m = 2 * k_pm + 1
    divs = [d for d in divisors(m) if d > 1]
    prime_divs = [d for d in divs if is_prime(d)]
    primes = primes_up_to(p_max)
    kept = []
    for p in primes:
        if p % 8 not in (3, 5):
            continue
        if m % p == 0:
            continue
        if any(p * p % d == 1 for d in divs):
            continue
        kept.append(p)
    for p in kept:
        for i in range(1, k_pm + 1):
            if inertia_degree(p, m, i) < 2:
                raise RuntimeError(
                    f"sieve criterion disagreed with inertia degree at p={p}, i={i}"
                )
    printed = Fraction(1, 2)
    dirichlet = Fraction(1, 2)
    for ell in prime_divs:
        printed *= 1 - Fraction(3, ell)
        dirichlet *= Fraction(ell - 3, ell - 1)
    total = len(primes)
    report = DensityReport(
        k_pm=k_pm,
        x=p_max,
        matching_prime_count=len(kept),
        total_prime_count=total,
        empirical_density=Fraction(len(kept), total) if total else Fraction(0),
        printed_density=printed,
        dirichlet_density=dirichlet,
    )
    return kept, report


def length_residues(family: Shape, r_max: int) -> tuple[list[int], set[int]]:
    """Admissible reduced word lengths for r <= r_max, and their residues
    mod 18.

    The x1^2 shapes give length 3r-1 for odd r >= 5 not divisible by 3;
    the x1^-2 shape gives length 3r-5 for odd r >= 7 with r+1 not
    divisible by 3.
    """
    if r_max < 7:
        raise ValueError(f"r_max must be >= 7, got {r_max}")
    if family is Shape.XNEG2_YK:
        lengths = [3 * r - 5 for r in range(7, r_max + 1, 2) if (r + 1) % 3 != 0]
    else:
        lengths = [3 * r - 1 for r in range(5, r_max + 1, 2) if r % 3 != 0]
    return lengths, {length % 18 for length in lengths}
