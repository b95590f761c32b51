#!/usr/bin/env python3
"""Smoke test for the boxchrom extension module."""

import json

import boxchrom


def main():
    x = boxchrom.gadget_x()
    assert not x.validate(), x.validate()
    assert json.loads(boxchrom.check_claim1())["colorings"] == 51

    fig = boxchrom.figure1().graph()
    chi, coloring = boxchrom.chromatic_number(fig, timeout=30.0)
    assert chi == 6
    assert boxchrom.verify_coloring(fig, coloring)
    assert boxchrom.k_colorable(fig, 5) is None

    assert json.loads(boxchrom.check_claim2(timeout=60.0))["unsat"]

    arr = boxchrom.random_guillotine(7, 30)
    again = boxchrom.Arrangement.from_json(arr.to_json())
    assert again.content_hash() == arr.content_hash()
    sides = [[hi - lo for lo, hi in e] for e in arr.extents().values()]
    bounds = {
        "level": max(s[2] for s in sides),
        "own-dim": max(min(s) for s in sides),
        "surface": max(2 * (a * b + b * c + a * c) for a, b, c in sides),
        "volume": max(a * b * c for a, b, c in sides),
    }
    for strategy, bound in bounds.items():
        colors, report = boxchrom.color(arr, strategy, bound)
        report = json.loads(report)
        assert boxchrom.verify_coloring(arr.graph(), colors)
        assert len(set(colors.values())) <= report["cap"], (strategy, report)

    cnf = boxchrom.export_cnf(boxchrom.gadget_y().graph(), 4)
    assert cnf.startswith("p cnf") or cnf.startswith("c")

    cert = json.loads(boxchrom.certify_z())
    assert cert["conclusion"] == {"chi": 8, "lower": 8, "upper": 8}

    try:
        boxchrom.Arrangement.from_json("{")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed JSON accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
