"""A tour of the library on a few small nilradicals.

Run with ``python3 demos/walkthrough.py``.
"""

from nilsymp import fixtures
from nilsymp.cohom import betti_numbers
from nilsymp.nilrad import ParabolicSpec, build_nilradical, extend_trivially, lower_central_series
from nilsymp.obstruct import dim_bound_check
from nilsymp.symp import decide, log2_bound, verify_symplectic


def show(code, pi0):
    spec = ParabolicSpec.of(code, pi0)
    n = build_nilradical(spec)
    print(f"{spec.key()}: dim {n.dim}, lower central series {[s.dim for s in lower_central_series(n)]}")
    print(f"  Betti numbers {betti_numbers(n)}")
    for target in ("n", "R+n"):
        v = decide(n, target, spec)
        print(f"  {target:4s} {v.outcome}: {v.evidence()}")
        if v.form is not None:
            print(f"       omega = {v.form.format(v.labels)}")
    print()


if __name__ == "__main__":
    # a symplectic trivial extension, an obstructed pair and a dimension-bound failure
    for code, pi0 in (("C3", (2,)), ("C3", (2, 3)), ("B4", (4,)), ("A4", (2, 3))):
        show(code, pi0)

    print("hand-written witness in the X, Y, Z, U basis:")
    n, omega = fixtures.c3_extension_witness()
    print(f"  {omega.format(n.labels)}  verifies: {verify_symplectic(n, omega)}")

    print("sampling certificate for a non-parabolic example (h5 + h3):")
    from nilsymp.nilrad import algebra_from_json
    h = algebra_from_json({"dim": 8, "brackets": [[0, 1, 1, 4], [2, 3, 1, 4], [5, 6, 1, 7]]})
    v = decide(h, "n")
    print(f"  {v.outcome}: max rank {v.max_rank} of {v.dim}, failure bound 2^{log2_bound(v.failure_bound)}")
