"""End-to-end checks of the command-line driver: exit codes, JSON/CSV
rendering, flag placement, the degree cap, and round-tripping of emitted
documents through the library parsers."""

import json

import pytest

from jfilt.automorphisms import (
    aut_from_json,
    aut_to_json,
    compose,
    framing_tuple,
    full_twist_tuple,
    invert_aut,
    is_identity,
    johnson_element,
    kernel_lift_tuple,
    milnor_compose,
    phi_hat,
    psi_hat,
    reduce_level,
    tuple_from_json,
    tuple_to_json,
    tuples_equal,
    X_ONLY,
    Y_ONLY,
)
from jfilt.brackets import dk_basis, dk_rank, tensor_from_json, tensor_to_json
from jfilt.cli import run
from jfilt.lagrangian import jl_element
from jfilt.lie import witt_dimension
from jfilt.trees import clasper_to_json, make_graph, tree_to_dk


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload, indent=2, sort_keys=True))
    return str(path)


def tripod_payload():
    g = make_graph(
        1,
        {"t0": 3, "l0": 1, "l1": 1, "l2": 1},
        [(("t0", 0), ("l0", 0)), (("t0", 1), ("l1", 0)), (("t0", 2), ("l2", 0))],
        {"l0": (1,), "l1": (1,), "l2": (1,)},
    )
    return clasper_to_json(g)


def theta_payload():
    g = make_graph(
        1,
        {"a": 3, "b": 3},
        [(("a", 0), ("b", 0)), (("a", 1), ("b", 1)), (("a", 2), ("b", 2))],
        {},
    )
    return clasper_to_json(g)


def h_tree_payload():
    g = make_graph(
        4,
        {"t0": 3, "t1": 3, "l0": 1, "l1": 1, "l2": 1, "l3": 1},
        [
            (("t0", 0), ("l0", 0)),
            (("t0", 1), ("l1", 0)),
            (("t0", 2), ("t1", 0)),
            (("t1", 1), ("l2", 0)),
            (("t1", 2), ("l3", 0)),
        ],
        {
            "l0": (1, 0, 0, 0),
            "l1": (0, 0, 1, 0),
            "l2": (0, 1, 0, 0),
            "l3": (0, 0, 0, 1),
        },
    )
    return g


def kernel_aut():
    return phi_hat(kernel_lift_tuple(3, 1, [1]))


def test_witt_prints_bare_number(capsys):
    code, out, _ = invoke(capsys, "witt", "4", "3")
    assert code == 0
    assert out.strip() == "20"


def test_degree_cap_default_and_override(capsys, monkeypatch):
    code, _, err = invoke(capsys, "witt", "4", "9")
    assert code == 3
    assert "JFILT_MAX_DEGREE" in err
    monkeypatch.setenv("JFILT_MAX_DEGREE", "4")
    code, _, err = invoke(capsys, "witt", "4", "5")
    assert code == 3
    assert "exceeds JFILT_MAX_DEGREE = 4" in err
    monkeypatch.setenv("JFILT_MAX_DEGREE", "12")
    code, out, _ = invoke(capsys, "witt", "4", "9")
    assert code == 0
    assert out.strip() == str(witt_dimension(4, 9)) == "29120"


def test_dk_rank_json_and_flag_positions(capsys):
    code, out, _ = invoke(capsys, "dk", "rank", "4", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"n": 4, "k": 2, "rank": dk_rank(4, 2)}
    # canonical key order in the raw text
    assert out.index('"k"') < out.index('"n"') < out.index('"rank"')
    code, before, _ = invoke(capsys, "--csv", "dk", "rank", "4", "2")
    assert code == 0
    code, after, _ = invoke(capsys, "dk", "rank", "4", "2", "--csv")
    assert code == 0
    assert before == after
    assert "rank,20" in after


def test_dk_basis_round_trips(capsys):
    code, out, _ = invoke(capsys, "dk", "basis", "3", "2")
    assert code == 0
    payload = json.loads(out)
    parsed = [tensor_from_json(b) for b in payload["basis"]]
    assert parsed == dk_basis(3, 2)
    assert payload["rank"] == len(parsed) == dk_rank(3, 2)


def test_a1_dimensions(capsys):
    code, out, _ = invoke(capsys, "a1", "2")
    assert code == 0
    assert json.loads(out) == {"g": 2, "dimensions": [4, 11]}


def test_tree_image_matches_library(capsys, tmp_path):
    g = h_tree_payload()
    path = write_json(tmp_path, "h.json", clasper_to_json(g))
    code, out, _ = invoke(capsys, "tree", "image", path)
    assert code == 0
    assert json.loads(out) == tensor_to_json(tree_to_dk(g))


def test_tree_span(capsys):
    code, out, _ = invoke(capsys, "tree", "span", "4", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["equal"] is True
    assert payload["span_rank"] == payload["kernel_rank"] == dk_rank(4, 2)


def test_aut_compose_and_invert(capsys, tmp_path):
    h = kernel_aut()
    path = write_json(tmp_path, "h.json", aut_to_json(h))
    code, out, _ = invoke(capsys, "aut", "compose", path, path)
    assert code == 0
    assert aut_from_json(json.loads(out)) == compose(h, h)
    code, out, _ = invoke(capsys, "aut", "invert", path)
    assert code == 0
    assert is_identity(compose(h, aut_from_json(json.loads(out))))


def test_aut_check_aut0_and_degree(capsys, tmp_path):
    path = write_json(tmp_path, "h.json", aut_to_json(kernel_aut()))
    code, out, _ = invoke(capsys, "aut", "check-aut0", path)
    assert code == 0
    assert json.loads(out) == {"check_aut0": True}
    code, out, _ = invoke(capsys, "aut", "degree", path)
    assert code == 0
    assert json.loads(out) == {"filtration_degree": 1}


def test_aut_johnson_default_k(capsys, tmp_path):
    h = kernel_aut()
    path = write_json(tmp_path, "h.json", aut_to_json(h))
    code, out, _ = invoke(capsys, "aut", "johnson", path)
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == 1
    assert payload["tensor"] == tensor_to_json(johnson_element(h, 1))


def test_johnson_on_homologically_visible_element_exits_3(capsys, tmp_path):
    h = phi_hat(framing_tuple(2, 3, [1, 0], Y_ONLY))
    path = write_json(tmp_path, "h.json", aut_to_json(h))
    code, _, err = invoke(capsys, "aut", "johnson", path, "--k", "1")
    assert code == 3
    assert "filtration_degree" in err


def test_stringlink_phi_psi(capsys, tmp_path):
    t = framing_tuple(2, 3, [1, 0], Y_ONLY)
    path = write_json(tmp_path, "t.json", tuple_to_json(t))
    code, out, _ = invoke(capsys, "stringlink", "phi", path)
    assert code == 0
    assert aut_from_json(json.loads(out)) == phi_hat(t)
    s = full_twist_tuple(2, 3, 1, X_ONLY)
    path = write_json(tmp_path, "s.json", tuple_to_json(s))
    code, out, _ = invoke(capsys, "stringlink", "psi", path)
    assert code == 0
    assert aut_from_json(json.loads(out)) == psi_hat(s)


def test_stringlink_compose(capsys, tmp_path):
    a = framing_tuple(2, 3, [1, 0], Y_ONLY)
    b = framing_tuple(2, 3, [0, 1], Y_ONLY)
    pa = write_json(tmp_path, "a.json", tuple_to_json(a))
    pb = write_json(tmp_path, "b.json", tuple_to_json(b))
    code, out, _ = invoke(capsys, "stringlink", "compose", pa, pb)
    assert code == 0
    assert tuples_equal(tuple_from_json(json.loads(out)), milnor_compose(a, b))


def test_stringlink_extract_inverts_phi(capsys, tmp_path):
    t = kernel_lift_tuple(3, 1, [1])
    path = write_json(tmp_path, "h.json", aut_to_json(phi_hat(t)))
    code, out, _ = invoke(capsys, "stringlink", "extract", path, "--k", "1")
    assert code == 0
    got = tuple_from_json(json.loads(out))
    assert got.level == 2
    assert got.entries == t.entries


def test_lagrangian_jl_and_degree(capsys, tmp_path):
    h = kernel_aut()
    path = write_json(tmp_path, "h.json", aut_to_json(h))
    code, out, _ = invoke(capsys, "lagrangian", "jl", path)
    assert code == 0
    payload = json.loads(out)
    report = jl_element(h, 1)
    assert payload["k"] == 1
    assert payload["in_hat"] is True
    assert payload["value"] == tensor_to_json(report.value)
    code, out, _ = invoke(capsys, "lagrangian", "degree", path)
    assert code == 0
    assert json.loads(out) == {"lagrangian_degree": 1}


def test_lagrangian_cocycle(capsys, tmp_path):
    path = write_json(tmp_path, "h.json", aut_to_json(kernel_aut()))
    code, out, _ = invoke(capsys, "lagrangian", "cocycle", path, path, "--k", "1")
    assert code == 0
    assert json.loads(out) == {"k": 1, "holds": True}


def test_gap_table_csv(capsys):
    code, out, _ = invoke(
        capsys, "lagrangian", "gap-table", "--gmax", "4", "--kmax", "2", "--csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "g,k,kernel_rank,braid_rank,gap,closed_form,match"
    assert "3,2,6,2,4,4,true" in lines
    assert len(lines) == 1 + 3 * 2


def test_gap_table_json(capsys):
    code, out, _ = invoke(capsys, "lagrangian", "gap-table", "--gmax", "3", "--kmax", "1")
    assert code == 0
    rows = json.loads(out)
    assert [r["g"] for r in rows] == [2, 3]
    assert all(r["match"] for r in rows)


def test_graph_orient_theta(capsys, tmp_path):
    path = write_json(tmp_path, "theta.json", theta_payload())
    code, out, _ = invoke(capsys, "graph", "orient", path)
    assert code == 0
    payload = json.loads(out)
    assert sorted(payload["orientation"]) == ["0", "1", "2"]
    assert payload["dot"].startswith("digraph")


def test_graph_orient_tree_exits_2(capsys, tmp_path):
    path = write_json(tmp_path, "tripod.json", tripod_payload())
    code, _, err = invoke(capsys, "graph", "orient", path)
    assert code == 2
    assert "tree: not orientable" in err


def test_graph_count(capsys, tmp_path):
    path = write_json(tmp_path, "theta.json", theta_payload())
    code, out, _ = invoke(capsys, "graph", "count", path)
    assert code == 0
    assert json.loads(out) == {"count": 6}


def test_malformed_and_missing_input_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    code, _, err = invoke(capsys, "aut", "invert", str(bad))
    assert code == 2
    assert "malformed JSON" in err
    code, _, err = invoke(capsys, "aut", "invert", str(tmp_path / "missing.json"))
    assert code == 2
    assert "cannot read" in err


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "rank.json"
    code, out, _ = invoke(capsys, "dk", "rank", "4", "2", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text()) == {"n": 4, "k": 2, "rank": 20}


def test_level_flag_reduces_before_acting(capsys, tmp_path):
    t = kernel_lift_tuple(2, 2, [1])  # level 4
    h = phi_hat(t)
    path = write_json(tmp_path, "h.json", aut_to_json(h))
    code, out, _ = invoke(capsys, "aut", "invert", path, "--level", "3")
    assert code == 0
    got = aut_from_json(json.loads(out))
    assert got.level == 3
    assert got == invert_aut(reduce_level(h, 3))


def test_selftest_exits_zero(capsys):
    code, out, _ = invoke(capsys, "selftest")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("CRITERION")]
    assert len(lines) == 10
    assert all("PASS" in l for l in lines)
