"""Independent brute-force oracles and random-input generators for the tests.

Everything here deliberately avoids the library's own algorithms: polynomial
arithmetic is schoolbook dense-dict convolution over integer exponents, the
eta factors are literal finite products (1-q^t)(1-q^2t)... rather than the
pentagonal series, and division solves the triangular system coefficient by
coefficient.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product as iproduct
from math import gcd

from etaprover import EtaProduct, QSeries, modular_function_check

# -- dense integer-exponent polynomial helpers --------------------------------


def pmul(a: dict, b: dict, depth: int) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        if e1 >= depth:
            continue
        for e2, c2 in b.items():
            e = e1 + e2
            if e < depth:
                out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def ppow(a: dict, n: int, depth: int) -> dict:
    out = {0: 1}
    for _ in range(n):
        out = pmul(out, a, depth)
    return out


def pdiv(a: dict, b: dict, depth: int) -> dict:
    """a/b as power series, for b with constant term 1."""
    assert b.get(0) == 1
    out: dict = {}
    for e in range(depth):
        c = a.get(e, 0) - sum(b.get(e - k, 0) * v for k, v in out.items() if k < e)
        if c:
            out[e] = c
    return out


def euler_brute(t: int, depth: int) -> dict:
    """prod_{n>=1} (1 - q^(t n)) by multiplying the binomials one by one."""
    acc = {0: 1}
    n = 1
    while t * n < depth:
        acc = pmul(acc, {0: 1, t * n: -1}, depth)
        n += 1
    return acc


def eta_quotient_brute(factors, depth: int) -> dict:
    """Integer-exponent expansion of prod (1-q^tn)^r factors, no prefactor."""
    num = {0: 1}
    den = {0: 1}
    for t, r in factors:
        part = ppow(euler_brute(t, depth), abs(r), depth)
        if r > 0:
            num = pmul(num, part, depth)
        else:
            den = pmul(den, part, depth)
    return pdiv(num, den, depth)


def partition_numbers(n: int) -> list[int]:
    """p(0..n) by Euler's recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        s, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            g2 = k * (3 * k + 1) // 2
            sgn = -1 if k % 2 == 0 else 1
            s += sgn * p[m - g1]
            if g2 <= m:
                s += sgn * p[m - g2]
            k += 1
        p[m] = s
    return p


# -- number-theory helpers -----------------------------------------------------


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def gamma0_index(n: int) -> int:
    """Index of Gamma0(n) in the full modular group: n * prod (1 + 1/p)."""
    idx = Fraction(n)
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            idx *= 1 + Fraction(1, p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        idx *= 1 + Fraction(1, m)
    assert idx.denominator == 1
    return int(idx)


# -- random generators ----------------------------------------------------------


def random_qseries(rng: random.Random, max_terms: int = 6) -> QSeries:
    t24 = rng.randint(8, 96)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = rng.randint(-24, t24 - 1)
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        terms[e] = c
    return QSeries([(Fraction(e, 24), c) for e, c in terms.items() if c],
                   trunc=Fraction(t24, 24))


def random_eta_product(rng: random.Random, max_t: int = 12,
                       max_r: int = 6, max_factors: int = 3) -> EtaProduct:
    count = rng.randint(1, max_factors)
    ts = rng.sample(range(1, max_t + 1), count)
    factors = [(t, rng.choice([r for r in range(-max_r, max_r + 1) if r]))
               for t in ts]
    return EtaProduct(factors)


_POOL_CACHE: dict[int, list[EtaProduct]] = {}


def modular_pool(level: int) -> list[EtaProduct]:
    """Nonempty list of eta-products that are modular functions on
    Gamma0(level), found by enumerating small exponent vectors over divisor
    subsets.  The bound escalates automatically until something is found."""
    if level in _POOL_CACHE:
        return _POOL_CACHE[level]
    divs = divisors(level)
    pool: list[EtaProduct] = []
    seen = set()
    bound = 4
    while not pool:
        max_support = 3 if len(divs) > 4 and bound > 4 else 4
        for k in range(2, min(len(divs), max_support) + 1):
            for sub in combinations(divs, k):
                for vec in iproduct(range(-bound, bound + 1), repeat=k):
                    if not any(vec):
                        continue
                    ep = EtaProduct(zip(sub, vec))
                    if ep.factors in seen or ep.is_empty():
                        continue
                    if modular_function_check(ep, level).invariant:
                        seen.add(ep.factors)
                        pool.append(ep)
        bound += 4
        if bound > 16:
            raise AssertionError(f"no modular eta-products found for level {level}")
    _POOL_CACHE[level] = pool
    return pool


def random_modular_product(rng: random.Random, level: int) -> EtaProduct:
    """A random modular function on Gamma0(level): a small integer
    combination of pool elements (the defining conditions are closed under
    products, so the result stays modular)."""
    pool = modular_pool(level)
    ep = EtaProduct()
    for _ in range(rng.randint(1, 3)):
        ep = ep * (rng.choice(pool) ** rng.choice([-2, -1, 1, 1, 2]))
    assert modular_function_check(ep, level).invariant
    return ep
