import json

import pytest

from quadfact.config import DEFAULT, BudgetExceeded
from quadfact.field import GF, rationals
from quadfact.oracle import AgreementReport, exhaustive_agreement, identity_suite


def test_f3_cubics_agree():
    rep = exhaustive_agreement(GF(3), [3], [3])
    assert rep.pairs_tested == 729 and rep.complete and rep.passed
    assert rep.pairs_with_factor == sum(v for k, v in rep.by_case.items()
                                        if k not in ("Undecided", "NoQuadFactor"))


def test_f2_frobenius_paths():
    rep = exhaustive_agreement(GF(2), range(1, 5), range(1, 5))
    assert rep.passed
    assert rep.by_case.get("T3a", 0) > 0 and rep.by_case.get("T3b", 0) > 0


def test_empty_range():
    rep = exhaustive_agreement(GF(3), [], [2])
    assert rep.pairs_tested == 0 and rep.passed and rep.complete


def test_resume_and_merge():
    K = GF(2)
    whole = exhaustive_agreement(K, [2, 3], [2, 3])
    first = exhaustive_agreement(K, [2, 3], [2, 3], max_pairs=50)
    assert not first.complete and first.cursor == 50
    rest = exhaustive_agreement(K, [2, 3], [2, 3], cursor=first.cursor)
    merged = first.merge(rest)
    assert merged.complete
    assert (merged.pairs_tested, merged.pairs_with_factor, merged.by_case) == \
        (whole.pairs_tested, whole.pairs_with_factor, whole.by_case)
    assert json.loads(merged.to_json())["passed"] is True


def test_budget():
    with pytest.raises(BudgetExceeded):
        exhaustive_agreement(GF(5, 2), [2], [2])
    with pytest.raises(BudgetExceeded):
        exhaustive_agreement(rationals(), [2], [2])


def test_report_flag_follows_disagreements():
    rep = AgreementReport("GF(2)", [1], [1])
    assert rep.passed
    rep.disagreements.append({"f": "x", "g": "x"})
    assert not rep.passed


def test_identity_suite_default():
    res = identity_suite()
    assert res and all(r.ok for r in res)
    names = {r.identity for r in res}
    assert {"dickson-definition", "dickson-transformation", "dickson-sum-product",
            "remark-b4", "remark-b5", "conjugation-identity", "mutation-self-check"} <= names
    assert not any(r.skipped for r in res)


def test_identity_suite_small_f7():
    res = identity_suite([GF(7)], max_n=16, groups=("dickson",))
    defn = [r for r in res if r.identity == "dickson-definition"]
    assert len(defn) == 17 * 7 and all(r.ok for r in defn)


def test_mutation_is_caught():
    (r,) = identity_suite([], groups=("mutation",))
    # ok means the perturbed identity was rejected by the comparison
    assert r.ok
