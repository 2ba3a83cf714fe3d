"""Smoke test for the Python bindings.

Build and install first:

    pip install --no-build-isolation -e crates/python
    python python/smoke_test.py
"""

import json

import morse_smale


def main():
    names = morse_smale.example_names()
    assert "pixton" in names and "chain-N" in names, names

    pixton = morse_smale.example("pixton")
    assert pixton.is_valid() and pixton.validate() == []
    assert pixton.canonical_numbering() == ["w1", "w2", "sigma", "alpha"]
    assert pixton.induced_inverse_numbering() == ["alpha", "sigma", "w2", "w1"]
    assert pixton.behaviour("alpha", "w1") == 2
    assert pixton.count_numberings() == 2

    rows = pixton.filtration()["attractors"]
    assert (rows[2]["i"], rows[2]["g"]) == (3, 0), rows

    verdict = pixton.decide()
    assert verdict["status"] == "NotExists", verdict
    assert verdict["reasons"][0]["witness"]["orbit"] == "sigma"
    try:
        pixton.certificate()
    except ValueError:
        pass
    else:
        raise AssertionError("certificate without Exists")

    north_south = morse_smale.example("north-south")
    assert north_south.classify() == {"class": "Sphere3", "m": 0}
    cert = north_south.certificate()
    assert [lvl["morse_index"] for lvl in cert["critical_levels"]] == [0, 3]

    s2xs1 = morse_smale.example("s2xs1-basic")
    assert s2xs1.classify()["m"] == 1
    assert s2xs1.decide()["status"] == "Unknown"

    # large counts arrive as Python ints
    chain = morse_smale.example("chain-25")
    assert chain.count_numberings() > 2**64

    d = morse_smale.random_diagram(42, annotations="strong")
    assert d.is_valid()
    assert d.decide()["status"] == "Exists"
    again = morse_smale.parse(d.to_json())
    assert again.to_json() == d.to_json()
    assert d.inverse().inverse().to_json() == d.to_json()

    report = json.loads(d.report("json"))
    assert report["validation"] == []
    assert d.report("dot").startswith("digraph")

    try:
        morse_smale.parse('{"schema_version": 2}')
    except ValueError as e:
        print("rejected as expected:", e)

    print("ok:", repr(d))


if __name__ == "__main__":
    main()
