"""Small integer helpers shared across the package."""

from __future__ import annotations


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine for desk-scale orders."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorize(n)))


def primes_from(start: int = 2):
    """Yield primes >= start in increasing order."""
    n = max(2, start)
    while True:
        if is_prime(n):
            yield n
        n += 1


def pi_part(n: int, primes) -> int:
    """Largest divisor of n whose prime factors all lie in `primes`."""
    out = 1
    for p, e in factorize(n).items():
        if p in primes:
            out *= p**e
    return out


def prime_power_split(q: int) -> tuple[int, int]:
    """q = p**k with p prime; returns (p, k) or raises."""
    fact = factorize(q)
    if len(fact) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, k),) = fact.items()
    return p, k
