"""Small number-theoretic helpers: unit lifting and Dedekind's psi."""

from __future__ import annotations

from math import gcd, prod

from sympy import factorint, primefactors

from .errors import InvalidParameters


def prime_support(n: int) -> set[int]:
    return set(primefactors(n))


def radical(n: int) -> int:
    return prod(primefactors(n)) if n > 1 else 1


def coprime_part(n: int, m: int) -> int:
    """Largest divisor of ``n`` coprime to ``m``."""
    part = n
    for p in primefactors(m):
        while part % p == 0:
            part //= p
    return part


def lift_unit(s: int, m: int, n: int) -> int:
    """Lift a unit ``s`` mod ``m`` to a unit ``s'`` mod ``n`` with ``s' = s (mod m)``.

    Requires ``m | n``, ``1 <= s < m`` and ``gcd(s, m) == 1``. When ``m`` and
    ``n`` have the same prime divisors ``s`` itself is returned; otherwise the
    least nonnegative solution of ``x = 1 (mod n')``, ``x = s (mod m)`` where
    ``n'`` is the largest divisor of ``n`` coprime to ``m``.
    """
    if m < 1 or n < 1 or n % m:
        raise InvalidParameters(f"need m | n with m, n positive, got m={m}, n={n}")
    if not 1 <= s < m:
        raise InvalidParameters(f"need 1 <= s < m, got s={s}, m={m}")
    if gcd(s, m) != 1:
        raise InvalidParameters(f"s={s} is not a unit mod {m}")
    n_prime = coprime_part(n, m)
    if n_prime == 1:
        return s
    # x = s + m*t with s + m*t = 1 (mod n')
    t = ((1 - s) * pow(m, -1, n_prime)) % n_prime
    return s + m * t


def dedekind_psi(n: int) -> int:
    """n * prod_{p | n} (1 + 1/p)."""
    if n < 1:
        raise InvalidParameters(f"psi is defined for n >= 1, got {n}")
    result = 1
    for p, k in factorint(n).items():
        result *= p**k + p ** (k - 1)
    return result
