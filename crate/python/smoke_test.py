"""Smoke test for the pysylowtab extension module.

Build and install the module, then run this file from the repository root:

    pip install --no-build-isolation -e crates/py
    python python/smoke_test.py
"""

import json
import sys

import pysylowtab


def main() -> int:
    assert "S4" in pysylowtab.corpus_names()

    s4 = pysylowtab.corpus_group("S4")
    report = json.loads(pysylowtab.oracle(s4))
    assert report["report_version"] == 1
    assert [row["status"] for row in report["rows"]] == ["MATCH", "MATCH"]

    table = pysylowtab.oracle_table(s4)
    assert pysylowtab.commutator_index_p2(table, 2) == ("Yes", "CENTRALIZER_CRITERION")
    assert pysylowtab.center_index_p2(table, 2) == ("Yes", "CASE_C")

    analyses = json.loads(pysylowtab.analyze(table))
    assert [a["p"] for a in analyses] == [2, 3]
    assert analyses[1]["abelian_sylow"] is True

    sl29 = json.loads(pysylowtab.oracle(pysylowtab.corpus_group("SL(2,9)"), 2))
    row = sl29["rows"][0]
    assert (row["commutator_answer"], row["status"]) == ("Yes", "MATCH")

    assert pysylowtab.simple_groups_of_order(20160) == ["A8", "PSL(3,4)"]

    try:
        pysylowtab.analyze("{}")
    except ValueError as e:
        assert "missing field" in str(e), e
    else:
        raise AssertionError("malformed document accepted")

    print("pysylowtab", pysylowtab.__version__, "smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
