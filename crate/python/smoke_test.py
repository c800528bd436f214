"""Smoke test for the pymorsekit extension.

Build and install it first:  pip install --no-build-isolation ./crates/python
Then run:                    python3 python/smoke_test.py
"""

import pymorsekit as mk


def main():
    hat, grad = mk.modified_dunce_hat()
    assert hat.f_vector() == [7, 19, 13] and len(hat) == 39
    assert hat.betti() == [1, 0, 0]
    assert len(hat.free_faces()) == 1
    assert mk.is_collapsible(hat)
    assert grad.is_valid_on(hat) and len(grad.critical(hat)) == 3
    residue, leftover = mk.collapse_by_gradient(hat, grad)
    assert leftover == 0 and residue.f_vector() == [2, 1]

    dunce = mk.classic_dunce_hat()
    assert not mk.is_collapsible(dunce)
    assert not mk.algorithm_b(dunce, 2)
    assert mk.algorithm_b(mk.SimplicialComplex([["a", "b", "c"]]), 2)

    cycle = [("a", "b"), ("b", "c"), ("c", "a")]
    assert len(mk.min_fas(cycle)) == 1
    k = mk.build_k(cycle)
    assert k.betti() == [1, 1, 0]
    assert mk.er_exact(k) == 1
    assert not mk.is_erasable(k)
    assert mk.is_erasable(mk.build_k(cycle, subgraph=cycle[:2]))

    k2, v = mk.witness_gradient(cycle)
    assert k2 == k and v.profile(k) == [1, 2, 1]
    assert len(mk.solution_map(cycle, v)) == 2
    report = mk.audit(cycle)
    assert report["holds"] == "true" and report["opt_maxmm"] == "104"

    again = mk.DiscreteGradient.from_grad(k, v.to_grad(k))
    assert again == v
    assert mk.SimplicialComplex.from_smax(k.to_smax()) == k

    try:
        mk.DiscreteGradient(k, [(["x"], ["x", "y"])])
    except ValueError:
        pass
    else:
        raise AssertionError("invalid gradient accepted")

    oriented, pairs = mk.mas_to_omas_f([("u", "v"), ("v", "u"), ("v", "w")])
    assert pairs == 1 and oriented == [("v", "w")]
    assert len(mk.mas_to_omas_g([("u", "v"), ("v", "u"), ("v", "w")], oriented)) == 2
    assert mk.hardness_factor(1, 126) == (4913, 4914)
    assert mk.hardness_factor(1, 18) == (701, 702)
    print("pymorsekit smoke test: ok")


if __name__ == "__main__":
    main()
