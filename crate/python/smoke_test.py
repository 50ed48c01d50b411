"""Smoke test for the gnctrees extension module.

Build and install first, e.g.

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/gnctrees-*.whl

then run ``python python/smoke_test.py``.
"""

import json

import gnctrees


def main():
    assert gnctrees.count(4, "h", method="formula") == 217
    for method in ("brute", "formula", "series"):
        assert gnctrees.count(3, "h,d", method=method) == 11
    assert gnctrees.count(2) == 12

    rows = gnctrees.census(2)
    assert len(rows) == 4 and sum(rows.values()) == 12
    assert gnctrees.census(1, star=True) == {(1, 0, 0): 1}

    assert gnctrees.series("ternary", order=5, at=(1, 1, 1)) == {"ternary": [1, 1, 3, 12, 55, 273]}
    assert gnctrees.series("ud-du", order=6, at=(1, 0, 1))["ud"] == [1, 1, 3, 11, 45, 197, 903]
    assert gnctrees.series("master", order=2)["master"].startswith("t^0: 1\n")

    tree = gnctrees.decode("UFFUFDDUUDD")
    assert tree.encode() == "UFFUFDDUUDD"
    assert tree.labels == [1, 2, 2, 2, 3, 3, 4, 5]
    assert tree.avoids("h,d") and tree.stats() == (7, 0, 0)
    again = gnctrees.GncTree.from_json(tree.to_json())
    assert again == tree and hash(again) == hash(tree)
    assert json.loads(tree.to_json())["jumps"] == [1, 4, 6, 7]

    increasing = gnctrees.trees(3, "h,d")
    assert len({t.encode() for t in increasing}) == 11

    level = gnctrees.GncTree(1, [(0, 1)])
    assert level.stats() == (0, 1, 0) and level.path_word(1) == "h"
    try:
        level.encode()
    except gnctrees.GncError:
        pass
    else:
        raise AssertionError("encoding a tree with a level edge should fail")

    assert gnctrees.sequence("gnc-du-h", 6)[-1] == 6025
    assert "coker" in gnctrees.sequence_names()
    try:
        gnctrees.count(4, "uu,ud", method="series")
    except ValueError as e:
        assert "supported" in str(e)
    else:
        raise AssertionError("unsupported series class should raise")

    report = gnctrees.verify("theorems", max_n=5)
    assert report.passed and report.failed == 0, report.failures()
    assert json.loads(report.to_json())["pass"] is True

    print("gnctrees smoke test passed")


if __name__ == "__main__":
    main()
