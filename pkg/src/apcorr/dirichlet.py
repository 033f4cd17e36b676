"""Dirichlet characters, Gauss sums, and short Dirichlet polynomials.

Characters mod q are stored as full value tables.  The polynomial under
study runs over two-prime products n = p1 p2 from a sieved window, with
the character evaluated at n and the terms n^(-(1+it)); an optional log
weight on the larger factor matches the weighted sequences elsewhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import arith
from .errors import DomainError, ParameterError
from .sieve import E2Params, SieveSegment, build_segment, e2_log_weights, e2_indicator

MAX_MODULUS = 10**4


@dataclass(frozen=True)
class DirichletCharacter:
    """One character mod q as a length-q table of values at 0..q-1."""

    q: int
    index: int
    values: np.ndarray = field(repr=False)
    principal: bool

    def __call__(self, n: int) -> complex:
        return complex(self.values[n % self.q])


@dataclass(frozen=True)
class CharacterTable:
    """All phi(q) characters mod q in a fixed deterministic order."""

    q: int
    chars: tuple[DirichletCharacter, ...]

    def principal(self) -> DirichletCharacter:
        return self.chars[0]


def _primitive_root(p: int) -> int:
    """Smallest primitive root mod an odd prime p."""
    order_factors = [f for f, _ in arith.factorize(p - 1)]
    g = 2
    while True:
        if all(pow(g, (p - 1) // f, p) != 1 for f in order_factors):
            return g
        g += 1


def _unit_generators(q: int) -> list[tuple[int, int]]:
    """Generators (g, order) of the unit group mod q, via CRT lifting."""
    gens: list[tuple[int, int]] = []
    for p, e in arith.factorize(q):
        pe = p**e
        rest = q // pe
        locals_: list[tuple[int, int]]
        if p == 2:
            if e == 1:
                locals_ = []
            elif e == 2:
                locals_ = [(3, 2)]
            else:
                locals_ = [(pe - 1, 2), (5, 2 ** (e - 2))]
        else:
            g = _primitive_root(p)
            if pow(g, p - 1, p * p) == 1:
                g += p
            locals_ = [(g % pe, pe - pe // p)]
        for g, order in locals_:
            if rest == 1:
                gens.append((g % q, order))
            else:
                inv = pow(rest, -1, pe)
                lifted = (1 + rest * ((g - 1) * inv % pe)) % q
                gens.append((lifted, order))
    return gens


def character_table(q: int) -> CharacterTable:
    """Build every Dirichlet character mod q (1 <= q <= 10^4).

    Characters are ordered lexicographically by their exponent vector on
    a fixed generator list, so the principal character comes first and
    the order is reproducible.
    """
    if q < 1:
        raise ParameterError(f"modulus must be >= 1, got {q}")
    if q > MAX_MODULUS:
        raise ParameterError(f"modulus {q} exceeds supported bound {MAX_MODULUS}")
    if q == 1:
        values = np.ones(1, dtype=np.complex128)
        return CharacterTable(1, (DirichletCharacter(1, 0, values, True),))

    gens = _unit_generators(q)
    orders = [s for _, s in gens]
    r = len(gens)

    # Exponent tables: exps[i][n] is the exponent of generator i in n.
    reps = np.array([1], dtype=np.int64)
    vecs = np.zeros((1, r), dtype=np.int64)
    for i, (g, order) in enumerate(gens):
        powers = np.empty(order, dtype=np.int64)
        cur = 1
        for k in range(order):
            powers[k] = cur
            cur = cur * g % q
        reps = (powers[:, None] * reps[None, :] % q).reshape(-1)
        new_vecs = np.repeat(vecs[None, :, :], order, axis=0).reshape(-1, r)
        new_vecs[:, i] += np.repeat(np.arange(order), len(vecs))
        vecs = new_vecs

    lcm = math.lcm(*orders) if orders else 1
    exps = np.zeros((r, q), dtype=np.int64)
    unit_mask = np.zeros(q, dtype=bool)
    unit_mask[reps % q] = True
    for i in range(r):
        exps[i, reps % q] = vecs[:, i]

    roots = np.exp(2j * math.pi * np.arange(lcm) / lcm)
    chars = []
    for index, kvec in enumerate(itertools.product(*(range(s) for s in orders))):
        phase = np.zeros(q, dtype=np.int64)
        for i, k in enumerate(kvec):
            phase += k * (lcm // orders[i]) * exps[i]
        values = np.where(unit_mask, roots[phase % lcm], 0.0 + 0.0j)
        principal = all(k == 0 for k in kvec)
        chars.append(DirichletCharacter(q, index, values, principal))
    return CharacterTable(q, tuple(chars))


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{n mod q} chi(n) e(n/q)."""
    q = chi.q
    e = np.exp(2j * math.pi * np.arange(q) / q)
    return complex(np.sum(chi.values * e))


def e2_dirichlet_poly(
    t: float,
    chi: DirichletCharacter,
    x: int,
    params: E2Params,
    weighted: bool = False,
    segment: SieveSegment | None = None,
) -> complex:
    """Dirichlet polynomial over two-prime products at s = 1 + it.

    Sums chi(n) * w(n) / n^(1+it) over members n = p1 p2 of (x, 2x],
    where w is 1 or, with weighted=True, log(p2).
    """
    if x < 1:
        raise ParameterError(f"x must be >= 1, got {x}")
    if segment is None:
        segment = build_segment(x, x)
    base = segment.subsegment(x, x)
    series = e2_log_weights(base, params) if weighted else e2_indicator(base, params)
    idx = np.nonzero(series.values)[0]
    if len(idx) == 0:
        return 0j
    ns = (x + 1 + idx).astype(np.float64)
    w = series.values[idx].astype(np.float64)
    chi_vals = chi.values[(x + 1 + idx) % chi.q]
    terms = chi_vals * w / ns * np.exp(-1j * t * np.log(ns))
    return complex(np.sum(terms))


@dataclass(frozen=True)
class FactorizationReport:
    """Outcome of the coefficient-level product decomposition check."""

    support_ok: bool
    bound_ok: bool
    residual: float
    boundary_coeffs: dict
    lhs: complex
    rhs: complex


def factorization_check(
    x: int,
    params: E2Params,
    u: float,
    s: complex = 1 + 0j,
) -> FactorizationReport:
    """Verify the block decomposition of the two-prime Dirichlet polynomial.

    With a_m the indicator of primes in the factor interval and b_n the
    prime indicator, F(s) = sum over x < mn <= 2x of a_m b_n (mn)^-s is
    regrouped as sum_v A_v(s) B_v(s) with the m-range cut into blocks
    [e^(v/u), e^((v+1)/u)) and the n-range fixed per block to
    (x e^(-v/u), 2x e^(-v/u)].  The regrouping is exact except for
    coefficients within e^(1/u) of the window edges; the report checks
    that support claim, the coefficient bound, and the numerical match
    of both evaluations at s.
    """
    if x < 2:
        raise ParameterError(f"x must be >= 2, got {x}")
    if u <= 0:
        raise ParameterError(f"u must be positive, got {u}")
    lo, hi = params.interval_bounds()
    m_primes = [int(p) for p in arith.primes_up_to(hi) if lo < p <= hi]
    n_hi = math.ceil(2 * x * math.exp(1.0 / u))
    n_primes = arith.primes_up_to(max(n_hi, 2))

    # Left side: coefficients of F, products confined to (x, 2x].
    c_f: dict[int, int] = {}
    # Right side main part: blocks indexed by v = floor(u log m).
    c_main: dict[int, int] = {}
    blocks: dict[int, list[int]] = {}
    for m in m_primes:
        blocks.setdefault(math.floor(u * math.log(m)), []).append(m)
    for v, ms in blocks.items():
        n_lo_v = x * math.exp(-v / u)
        n_hi_v = 2 * x * math.exp(-v / u)
        ns = n_primes[(n_primes > n_lo_v) & (n_primes <= n_hi_v)]
        for m in ms:
            for n in ns.tolist():
                k = m * n
                c_main[k] = c_main.get(k, 0) + 1
    for m in m_primes:
        for n in n_primes[(n_primes > x // m) & (n_primes <= (2 * x) // m)].tolist():
            k = m * n
            if x < k <= 2 * x:
                c_f[k] = c_f.get(k, 0) + 1

    boundary: dict[int, int] = {}
    for k in set(c_f) | set(c_main):
        d = c_f.get(k, 0) - c_main.get(k, 0)
        if d:
            boundary[k] = d

    low_lo = x * math.exp(-1.0 / u)
    low_hi = x * math.exp(1.0 / u)
    high_hi = 2 * x * math.exp(1.0 / u)
    support_ok = all(
        (low_lo <= k <= low_hi) or (2 * x <= k <= high_hi) for k in boundary
    )

    # Each boundary coefficient is at most the coefficient mass at k.
    bound_ok = True
    for k, d in boundary.items():
        mass = 0
        for m in m_primes:
            if k % m == 0 and arith.is_prime(k // m):
                mass += 1
        if abs(d) > mass:
            bound_ok = False
            break

    def poly(coeffs: dict[int, int]) -> complex:
        if not coeffs:
            return 0j
        ks = np.array(sorted(coeffs), dtype=np.float64)
        cs = np.array([coeffs[int(k)] for k in sorted(coeffs)], dtype=np.float64)
        return complex(np.sum(cs * np.exp(-s * np.log(ks))))

    lhs = poly(c_f)
    rhs_main = 0j
    for v, ms in blocks.items():
        n_lo_v = x * math.exp(-v / u)
        n_hi_v = 2 * x * math.exp(-v / u)
        ns = n_primes[(n_primes > n_lo_v) & (n_primes <= n_hi_v)].astype(np.float64)
        a_v = complex(np.sum(np.exp(-s * np.log(np.array(ms, dtype=np.float64)))))
        b_v = complex(np.sum(np.exp(-s * np.log(ns)))) if len(ns) else 0j
        rhs_main += a_v * b_v
    rhs = rhs_main + poly(boundary)
    residual = abs(lhs - rhs)
    return FactorizationReport(
        support_ok=support_ok,
        bound_ok=bound_ok,
        residual=residual,
        boundary_coeffs=boundary,
        lhs=lhs,
        rhs=rhs,
    )


def mean_square_report(
    chi: DirichletCharacter,
    x: int,
    params: E2Params,
    t0: float,
    t1: float,
    step: float,
    weighted: bool = False,
) -> dict:
    """Trapezoid estimate of the mean square of the polynomial on 1 + it.

    Integrates |F(1 + it)|^2 over [t0, t1] on a uniform grid and compares
    with the mean value bound (phi(q) T + phi(q) x / q) * sum |a_n|^2/n^2,
    T = t1 - t0.  Purely diagnostic; returns integral, bound, and ratio.
    """
    if t1 < t0:
        raise ParameterError(f"empty range [{t0}, {t1}]")
    if step <= 0:
        raise ParameterError(f"step must be positive, got {step}")
    segment = build_segment(x, x)
    base = segment.subsegment(x, x)
    series = e2_log_weights(base, params) if weighted else e2_indicator(base, params)
    idx = np.nonzero(series.values)[0]
    ns = (x + 1 + idx).astype(np.float64)
    w = series.values[idx].astype(np.float64)
    coeff_mass = float(np.sum((w / ns) ** 2)) if len(ns) else 0.0

    ts = np.arange(t0, t1 + step * 0.5, step)
    fs = np.array(
        [
            e2_dirichlet_poly(float(t), chi, x, params, weighted, segment=segment)
            for t in ts
        ]
    )
    mags = np.abs(fs) ** 2
    if len(ts) == 1:
        integral = float((t1 - t0) * mags[0])
    else:
        integral = float(np.trapezoid(mags, ts))
    phi_q = arith.euler_phi(chi.q)
    bound = (phi_q * (t1 - t0) + phi_q * x / chi.q) * coeff_mass
    ratio = integral / bound if bound > 0 else math.inf
    return {"integral": integral, "bound": bound, "ratio": ratio}
