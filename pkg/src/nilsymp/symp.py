"""Deciding whether n or R + n carries a symplectic form."""

from __future__ import annotations

import hashlib
import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .cohom import ExtForm, closed_2forms, d_form, is_closed_2form
from .nilrad import NilAlgebra, ParabolicSpec, extend_trivially, is_abelian_nilradical, lower_central_series
from .obstruct import (Obstruction, central_hwv_check, dim_bound_check, pt_condition,
                       pt_obstruction_levi, pt_obstruction_trivial_g, t_range)

PRIME = (1 << 62) - 57          # largest prime below 2^62
SAMPLES = 64
COEFF_BOUND = 10 ** 4
LIFT_TRIES = 24
TARGETS = ("n", "R+n")

EXIT_CODES = {"SymplecticWitness": 0, "ObstructedNo": 1, "ProbablyNo": 2, "OddDim": 3}


class OddDim(ValueError):
    pass


@dataclass
class Verdict:
    target: str
    outcome: str
    form: Optional[ExtForm] = None
    obstruction: Optional[Obstruction] = None
    samples: int = 0
    prime: int = 0
    failure_bound: Optional[Fraction] = None
    max_rank: Optional[int] = None
    dim: int = 0
    labels: Sequence[str] = ()
    certificate: Optional[dict] = None   # sampling certificate attached on request

    @property
    def symplectic(self) -> bool:
        return self.outcome == "SymplecticWitness"

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.outcome]

    def to_json(self) -> dict:
        out = {"target": self.target, "outcome": self.outcome, "dim": self.dim}
        if self.form is not None:
            out["witness"] = self.form.to_json()
            out["witness_text"] = self.form.format(self.labels)
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction.to_json()
        if self.outcome == "ProbablyNo":
            out.update(samples=self.samples, prime=self.prime, max_rank=self.max_rank,
                       failure_bound=str(self.failure_bound),
                       log2_failure_bound=log2_bound(self.failure_bound))
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out

    def evidence(self) -> str:
        if self.outcome == "SymplecticWitness":
            return f"witness with {len(self.form.coeffs)} terms"
        if self.outcome == "ObstructedNo":
            return self.obstruction.summary()
        if self.outcome == "ProbablyNo":
            return f"max closed rank {self.max_rank} < {self.dim} in {self.samples} samples mod p"
        return "odd dimension"


def case_seed(key: str, override: Optional[int] = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("NILSYMP_SEED")
    if env:
        return int(env)
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big")


def algebra_key(n: NilAlgebra) -> str:
    h = hashlib.sha256(repr(sorted((k, sorted(v.items())) for k, v in n.brackets.items())).encode())
    return f"dim{n.dim}:{h.hexdigest()[:16]}"


# -- exact verification -----------------------------------------------------------

def verify_symplectic(n: NilAlgebra, omega: ExtForm) -> bool:
    """d omega = 0 and omega^(dim/2) != 0, both exactly."""
    if n.dim % 2:
        raise OddDim(f"dimension {n.dim} is odd")
    if omega.degree != 2:
        raise ValueError("expected a 2-form")
    if d_form(n, omega):
        return False
    return linalg.pfaffian(omega.skew_matrix(n.dim)) != 0


def top_power_nonzero(n: NilAlgebra, omega: ExtForm) -> bool:
    """omega^(dim/2) != 0 via repeated wedge products (small dims only)."""
    return bool(omega.power(n.dim // 2))


# -- witness search ---------------------------------------------------------------

def _closed_monomials(n: NilAlgebra) -> List[Tuple[int, int]]:
    return [next(iter(v)) for v in closed_2forms(n).basis() if len(v) == 1]


def greedy_matching_witness(n: NilAlgebra, budget: int = 20000) -> Optional[ExtForm]:
    """Pair basis vectors through closed monomials e^a ^ e^b covering every index.

    High grades are paired first, preferring low-grade partners.
    """
    d = n.dim
    adj: Dict[int, List[int]] = {i: [] for i in range(d)}
    for a, b in _closed_monomials(n):
        adj[a].append(b)
        adj[b].append(a)
    g = n.grading
    for i in adj:
        adj[i].sort(key=lambda j: (g[j], j))
    order = sorted(range(d), key=lambda i: (-g[i], len(adj[i]), i))
    mate: Dict[int, int] = {}
    steps = [0]

    def solve() -> bool:
        free = next((i for i in order if i not in mate), None)
        if free is None:
            return True
        steps[0] += 1
        if steps[0] > budget:
            return False
        for j in adj[free]:
            if j not in mate:
                mate[free], mate[j] = j, free
                if solve():
                    return True
                del mate[free], mate[j]
        return False

    if d % 2 or not solve():
        return None
    terms = {}
    for a, b in mate.items():
        if a < b:
            terms[(a, b)] = 1
    return ExtForm(2, terms)


def _integer_basis(n: NilAlgebra) -> List[Dict[Tuple[int, int], int]]:
    return [linalg.to_integer(v) for v in closed_2forms(n).basis()]


def _combo(basis, coeffs) -> Dict[Tuple[int, int], int]:
    out: Dict[Tuple[int, int], int] = {}
    for c, v in zip(coeffs, basis):
        if c:
            for k, x in v.items():
                out[k] = out.get(k, 0) + c * x
    return {k: x for k, x in out.items() if x}


def _rank_mod_p(d: int, form: Dict[Tuple[int, int], int], p: int) -> int:
    m = [[0] * d for _ in range(d)]
    for (a, b), x in form.items():
        m[a][b] = x % p
        m[b][a] = (-x) % p
    return linalg.rank_mod_p(m, p)


def random_lift_witness(n: NilAlgebra, rng: random.Random, tries: int = LIFT_TRIES,
                        bound: int = COEFF_BOUND, p: int = PRIME) -> Optional[ExtForm]:
    """Random integer combinations of the closed basis, then sparsified."""
    d = n.dim
    if d % 2:
        return None
    basis = _integer_basis(n)
    if not basis:
        return None
    for _ in range(tries):
        coeffs = [rng.randint(-bound, bound) for _ in basis]
        if _rank_mod_p(d, _combo(basis, coeffs), p) < d:
            continue
        # drop coefficients while the form stays nondegenerate mod p
        for i in sorted(range(len(coeffs)), key=lambda i: -len(basis[i])):
            saved = coeffs[i]
            coeffs[i] = 0
            if _rank_mod_p(d, _combo(basis, coeffs), p) < d:
                coeffs[i] = saved
        for i, c in enumerate(coeffs):
            if c:
                coeffs[i] = 1 if c > 0 else -1
                if _rank_mod_p(d, _combo(basis, coeffs), p) < d:
                    coeffs[i] = c
        omega = ExtForm(2, _combo(basis, coeffs))
        if verify_symplectic(n, omega):
            return omega
    return None


def find_witness(n: NilAlgebra, seed: int = 0) -> Optional[ExtForm]:
    omega = greedy_matching_witness(n)
    if omega is not None and verify_symplectic(n, omega):
        return omega
    return random_lift_witness(n, random.Random(seed))


def max_closed_rank(n: NilAlgebra, samples: int = SAMPLES, prime: int = PRIME,
                    seed: int = 0) -> Tuple[int, dict]:
    """Largest rank seen among random F_p combinations of the closed 2-forms.

    The Pfaffian of the generic combination has degree dim/2, so when a
    nondegenerate closed form exists each sample misses it with probability
    at most (dim/2)/p.
    """
    d = n.dim
    rng = random.Random(seed)
    basis = []
    for v in closed_2forms(n).basis():
        basis.append({k: x.numerator * pow(x.denominator, -1, prime) % prime for k, x in v.items()})
    best = 0
    for _ in range(samples):
        coeffs = [rng.randrange(prime) for _ in basis]
        best = max(best, _rank_mod_p(d, _combo(basis, coeffs), prime))
        if best == d:
            break
    per = Fraction(d // 2, prime) if d else Fraction(0)
    cert = {
        "samples": samples, "prime": prime, "max_rank": best, "dim": d,
        "failure_bound": per ** samples if best < d else Fraction(0),
    }
    return best, cert


def probably_no(alg: NilAlgebra, target: str, samples: int, seed: int) -> Verdict:
    best, cert = max_closed_rank(alg, samples, PRIME, seed)
    if best == alg.dim:
        raise AssertionError("sampling found full rank but the exact search did not")
    return Verdict(target, "ProbablyNo", samples=samples, prime=PRIME,
                   failure_bound=cert["failure_bound"], max_rank=best,
                   dim=alg.dim, labels=alg.labels)


def log2_bound(bound: Optional[Fraction]) -> Optional[float]:
    """log2 of a (possibly astronomically small) failure bound, rounded to 0.1."""
    if bound is None:
        return None
    if bound == 0:
        return float("-inf")
    return round(math.log2(bound.numerator) - math.log2(bound.denominator), 1)


def certificate_json(cert: dict) -> dict:
    out = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in cert.items()}
    if cert.get("failure_bound"):
        out["log2_failure_bound"] = log2_bound(cert["failure_bound"])
    return out


# -- the pipeline ---------------------------------------------------------------

def decide(n: NilAlgebra, target: str = "n", spec: Optional[ParabolicSpec] = None,
           seed: Optional[int] = None, samples: int = SAMPLES,
           corroborate: bool = False) -> Verdict:
    """Parity, dimension bound, P_t criteria, central hwv check, then witness search.

    With ``corroborate`` an obstructed verdict also carries a sampling
    certificate for the target algebra.
    """
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}")
    alg = n if target == "n" else extend_trivially(n)
    key = (spec.key() if spec is not None else algebra_key(n)) + ":" + target
    s = case_seed(key, seed)
    if alg.dim % 2:
        return Verdict(target, "OddDim", dim=alg.dim, labels=alg.labels)

    obs = _first_obstruction(n, spec)
    if obs is not None:
        v = Verdict(target, "ObstructedNo", obstruction=obs, dim=alg.dim, labels=alg.labels)
        if corroborate:
            best, cert = max_closed_rank(alg, samples, PRIME, s)
            v.certificate = certificate_json(cert)
        return v

    omega = find_witness(alg, s)
    if omega is not None:
        return Verdict(target, "SymplecticWitness", form=omega, dim=alg.dim, labels=alg.labels)
    return probably_no(alg, target, samples, s)


def _first_obstruction(n: NilAlgebra, spec: Optional[ParabolicSpec]) -> Optional[Obstruction]:
    obs = dim_bound_check(n)
    if obs is not None:
        return obs
    if n.is_abelian:
        return None
    k = len(lower_central_series(n)) - 1
    for t in t_range(k):
        obs = pt_obstruction_trivial_g(n, t)
        if obs is not None:
            return obs
    if spec is not None and not is_abelian_nilradical(spec):
        obs = central_hwv_check(spec)
        if obs is not None:
            return obs
        for t in t_range(k):
            if pt_condition(n, t):
                obs = pt_obstruction_levi(spec, t, n)
                if obs is not None:
                    return obs
    return None


def decide_both(n: NilAlgebra, spec: Optional[ParabolicSpec] = None, **kw) -> Dict[str, Verdict]:
    return {t: decide(n, t, spec, **kw) for t in TARGETS}


def obstructions(n: NilAlgebra, spec: Optional[ParabolicSpec] = None) -> List[Obstruction]:
    """Every criterion that fires (not only the first)."""
    out = []
    o = dim_bound_check(n)
    if o:
        out.append(o)
    if n.is_abelian:
        return out
    k = len(lower_central_series(n)) - 1
    for t in t_range(k):
        o = pt_obstruction_trivial_g(n, t)
        if o:
            out.append(o)
    if spec is not None and not is_abelian_nilradical(spec):
        o = central_hwv_check(spec)
        if o:
            out.append(o)
        for t in t_range(k):
            if pt_condition(n, t):
                o = pt_obstruction_levi(spec, t, n)
                if o:
                    out.append(o)
    return out
