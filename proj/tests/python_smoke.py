#!/usr/bin/env python3
"""Python binding smoke test; run with PYTHONPATH pointing at the built package."""

import json
import sys

import fairsor


def main():
    inst = fairsor.generate_instance(seed=3, n=8, ell=2)
    assert inst.n == 8
    assert inst.ell == 2
    assert fairsor.validate_metric(inst) == []
    assert inst.d(0, 1) == inst.d(1, 0)

    res = fairsor.fair_tk_cluster(inst, t=2, k=2, solver="exact")
    assert res.fairness_ok
    assert res.cost >= 0.0
    assert len(res.clustering.clusters) <= 2
    parsed = json.loads(fairsor.result_json(res, inst))
    assert parsed["fair"] is True
    assert parsed["solver"] == "exact"

    opt = fairsor.opt_fair_bruteforce(inst, 2, 2)
    assert opt.cost <= res.cost + 1e-9
    assert json.loads(fairsor.oracle_json(opt, inst))["cost"] == opt.cost

    rep = fairsor.diagnose_fair(inst, 2, 2, solver="exact", instance_id="smoke")
    assert rep.passed(), rep.violations
    assert json.loads(rep.to_json())["instance_id"] == "smoke"

    bal_inst = fairsor.generate_instance(seed=11, n=9, ell=3, mode="random-metric", box=50.0)
    bal = fairsor.balanced_cluster(bal_inst, k=2, solver="exact")
    assert bal.fairness_ok
    brep = fairsor.diagnose_balanced(bal_inst, 2, solver="exact")
    assert brep.passed(), brep.violations
    assert brep.color_degree_balance

    # Exception mapping: invalid inputs are ValueError, infeasibility RuntimeError.
    try:
        fairsor.fair_tk_cluster(inst, t=0, k=1)
    except ValueError:
        pass
    else:
        raise AssertionError("t=0 accepted")

    skew = fairsor.load_instance_json(json.dumps({
        "n": 4,
        "groups": [1, 2, 2, 2],
        "dist": [[0.0 if i == j else 1.0 for j in range(4)] for i in range(4)],
    }))
    try:
        fairsor.fair_tk_cluster(skew, t=2, k=2)
    except RuntimeError:
        pass
    else:
        raise AssertionError("infeasible instance accepted")

    try:
        fairsor.load_instance_json("{not json")
    except ValueError:
        pass
    else:
        raise AssertionError("junk JSON accepted")

    # Instance JSON round trip through the bindings.
    back = fairsor.load_instance_json(inst.to_json())
    assert back.to_json() == inst.to_json()

    print("python smoke ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
