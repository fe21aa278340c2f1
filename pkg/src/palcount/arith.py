"""Integer helpers: primality, factorization, divisors and the Moebius function."""

from __future__ import annotations


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division, as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"factorize needs a positive integer, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == {n: 1}


def prime_factors(n: int) -> list[int]:
    return sorted(factorize(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in ascending order."""
    divs = [1]
    for prime, exp in factorize(n).items():
        divs = [d * prime**e for d in divs for e in range(exp + 1)]
    return sorted(divs)


def mobius(k: int) -> int:
    fac = factorize(k)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def squarefree_divisors(n: int) -> list[tuple[int, int]]:
    """Pairs ``(k, mobius(k))`` for the divisors ``k`` of ``n`` with ``mobius(k) != 0``."""
    return [(k, mobius(k)) for k in divisors(n) if mobius(k) != 0]


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**r``; raises ValueError when ``q`` is not a prime power."""
    fac = factorize(q) if q > 1 else {}
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, r),) = fac.items()
    return p, r
