import math
from typing import List, NamedTuple, Optional

import numpy as np

from utils.error_handler import ConfigurationError, DomainError

PeriodCandidateList = List[int]


class BaseSample(NamedTuple):
    base: int
    shared_factor: Optional[int] = None


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus (square-and-multiply via built-in pow)"""
    if modulus < 2:
        raise ConfigurationError("modulus", f"must be >= 2, got {modulus}")
    if base < 0 or exponent < 0:
        raise DomainError(f"mod_pow expects nonnegative operands, got {base}^{exponent}")
    return pow(base, exponent, modulus)


def gcd(x: int, y: int) -> int:
    if x == 0 and y == 0:
        raise DomainError("gcd(0, 0) is undefined")
    return math.gcd(x, y)


def cf_expansion(numerator: int, denominator: int) -> List[int]:
    """Partial quotients of numerator/denominator (Euclid)"""
    quotients = []
    while denominator:
        q, r = divmod(numerator, denominator)
        quotients.append(q)
        numerator, denominator = denominator, r
    return quotients


def cf_denominators(y: int, power_of_two_denominator: int, qmax: int) -> PeriodCandidateList:
    """Denominators q <= qmax of the convergents of y / power_of_two_denominator.

    The expansion stops as soon as a convergent denominator exceeds qmax,
    since denominators grow monotonically from there on.
    """
    if power_of_two_denominator <= 0:
        raise DomainError("denominator must be positive")
    if not 0 <= y < power_of_two_denominator:
        raise DomainError(f"y={y} must lie in [0, {power_of_two_denominator})")

    denominators = []
    q_prev, q_curr = 1, 0
    for a_k in cf_expansion(y, power_of_two_denominator):
        q_prev, q_curr = q_curr, a_k * q_curr + q_prev
        if q_curr > qmax:
            break
        if not denominators or denominators[-1] != q_curr:
            denominators.append(q_curr)
    return denominators


def multiplicative_order(a: int, N: int) -> Optional[int]:
    """Smallest r >= 1 with a^r = 1 mod N, by direct iteration up to N"""
    if math.gcd(a, N) != 1:
        raise DomainError(f"gcd({a}, {N}) != 1, order undefined")
    value = a % N
    for r in range(1, N + 1):
        if value == 1:
            return r
        value = (value * a) % N
    return None


def is_prime(n: int) -> bool:
    """Trial division; fine at desk scale"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) in exact integer arithmetic"""
    if k == 2:
        return math.isqrt(n)
    x = int(round(n ** (1.0 / k)))
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def prime_power_base(n: int) -> Optional[int]:
    """p if n == p**k for a prime p and k >= 2, else None"""
    for k in range(2, n.bit_length() + 1):
        root = integer_root(n, k)
        if root >= 2 and root ** k == n and is_prime(root):
            return root
    return None


def sample_coprime_base(N: int, rng: np.random.Generator) -> BaseSample:
    """Draw a uniform base in [2, N-2]; a shared divisor short-circuits as a factor"""
    if N < 4:
        raise ConfigurationError("n", f"must be >= 4, got {N}")
    if is_prime(N):
        raise ConfigurationError("n", f"{N} is prime")

    a = int(rng.integers(2, N - 1))
    shared = math.gcd(a, N)
    if shared > 1:
        return BaseSample(base=a, shared_factor=shared)
    return BaseSample(base=a)
