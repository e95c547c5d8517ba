import json

from hypothesis import given, settings

from branchcover.complex import boundary_simplex, cross_polytope
from branchcover.io import (
    canonical_json,
    coloring_from_attrs,
    coloring_to_attrs,
    complex_from_dict,
    complex_to_dict,
    digest,
    dumps_complex,
    loads_complex,
    read_complex,
    write_complex,
)
from branchcover.subdivision import SubdivisionScript
from oracles import refined


def test_complex_dict_shape():
    d = complex_to_dict(boundary_simplex(2))
    assert d == {"dim": 2, "facets": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]}
    assert "attrs" not in d
    assert complex_to_dict(boundary_simplex(2), {"x": 1})["attrs"] == {"x": 1}


def test_canonical_json():
    text = canonical_json({"b": 1, "a": [1, 2]})
    assert text == '{"a": [1, 2], "b": 1}\n'
    assert canonical_json({"a": 1, "b": 2}) == canonical_json({"b": 2, "a": 1})


@settings(max_examples=30)
@given(refined())
def test_dump_load_round_trip(K):
    attrs = coloring_to_attrs({v: i % 3 for i, v in enumerate(K.vertices)})
    text = dumps_complex(K, attrs)
    K2, attrs2 = loads_complex(text)
    assert K2 == K and attrs2 == attrs
    assert dumps_complex(K2, attrs2) == text
    assert complex_from_dict(json.loads(text))[0] == K


def test_file_round_trip(tmp_path):
    K = cross_polytope(2)
    p = tmp_path / "o.json"
    write_complex(p, K)
    assert read_complex(p) == (K, {})
    assert p.read_text().endswith("\n")


def test_unsorted_input_is_normalised():
    K, _ = loads_complex('{"facets": [[4, 3, 2], [1, 3, 2], [4, 1, 2], [3, 4, 1]], "dim": 2}')
    assert K == boundary_simplex(2)


def test_digest():
    t = dumps_complex(boundary_simplex(2))
    assert digest(t) == digest(t) and len(digest(t)) == 64
    assert digest(t) != digest(dumps_complex(cross_polytope(2)))


def test_coloring_attrs():
    col = {3: 1, 1: 0, 10: 2}
    a = coloring_to_attrs(col)
    # keys become strings so the JSON is valid
    assert list(a["colors"]) == ["1", "3", "10"]
    assert coloring_from_attrs(json.loads(canonical_json(a))) == col
    assert coloring_from_attrs({}) == {}


def test_script_json_by_digest():
    K = boundary_simplex(2)
    script = SubdivisionScript(K, [((1, 2), 5), ((3, 4), 6)])
    dg = digest(dumps_complex(K))
    data = json.loads(canonical_json(script.to_json(dg)))
    assert data["base"] == dg
    again = SubdivisionScript.from_json(data, K)
    assert again.steps == script.steps and again.base == K
