import json
import random

import pytest

from qdeform.cli import Config, main
from qdeform.ncalg import NCPoly
from qdeform.scalar import HSeries


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_star_normal(capsys):
    code, out, _ = run(capsys, "star", "--algebra", "plane", "--ordering", "normal", "y", "x")
    assert code == 0
    assert out.strip().startswith("(1 - h + 1/2*h^2 - 1/6*h^3") and out.strip().endswith(")*x*y")


def test_star_unit(capsys):
    assert run(capsys, "star", "1", "x")[1].strip() == "x"
    assert run(capsys, "star", "--algebra", "m2", "--ordering", "sympres", "a*d - b*c", "1")[1].strip() == "a*d - b*c"


def test_star_json_roundtrip(capsys):
    code, out, _ = run(capsys, "--format", "json", "star", "--order", "4", "x", "y")
    data = json.loads(out)
    p = NCPoly.from_json(data["result"])
    assert p.order == 4 and data["config"]["ordering"] == "sympres"
    assert NCPoly.from_json(json.loads(json.dumps(p.to_json()))) == p


def test_order_map_examples(capsys):
    out = run(capsys, "order-map", "--ordering", "sympres", "--order", "4", "x*y")[1]
    assert out.strip() == "(1 - 1/2*h + 3/8*h^2 - 7/48*h^3 + O(h^4))*x*y"
    out = run(capsys, "order-map", "--algebra", "m2", "--direction", "inv", "a*d - e(1)*b*c")[1]
    assert out.strip() == "a*d - b*c"
    assert run(capsys, "order-map", "x^3")[1].strip() == "x^3"


def _as_text(p: NCPoly, gens: str) -> str:
    """Render a polynomial in the input grammar (no O(h^N) tails)."""
    terms = []
    for e, c in p.items():
        coeff = " + ".join(f"({r})*h^{i}" for i, r in enumerate(c.coeffs) if not r.is_zero())
        mono = "*".join(f"{g}^{n}" for g, n in zip(gens, e) if n) or "1"
        terms.append(f"({coeff})*{mono}")
    return " + ".join(terms)


@pytest.mark.parametrize("algebra, gens, count", [("plane", "xy", 60), ("m2", "abcd", 40)])
def test_order_map_roundtrip(capsys, algebra, gens, count):
    rng = random.Random(7)
    opts = ["--format", "json", "--algebra", algebra, "--order", "5"]
    for _ in range(count):
        e = [rng.randint(0, 3) for _ in gens]
        expr = "*".join(f"{g}^{n}" for g, n in zip(gens, e) if n) or "1"
        code, out, _ = run(capsys, *opts, "order-map", expr)
        fwd = NCPoly.from_json(json.loads(out)["result"])
        code, out, _ = run(capsys, *opts, "order-map", "--direction", "inv", _as_text(fwd, gens))
        assert code == 0
        back = NCPoly.from_json(json.loads(out)["result"])
        assert back == back.algebra.monomial(tuple(e), 1, 5)


def test_cg_tables(capsys):
    code, out, _ = run(capsys, "cg", "1/2", "1/2")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 2 + 6
    assert lines[2].split("\t")[:3] == ["1", "1/2", "1/2"]
    out = run(capsys, "cg", "0", "1")[1]
    assert all(line.split("\t")[3] == "1 + O(h^8)" for line in out.strip().splitlines()[2:])
    out = run(capsys, "cg", "1", "1", "--order", "4")[1]
    assert "O(h^4)" in out and "h^4 " not in out


def test_cg_json(capsys):
    data = json.loads(run(capsys, "--format", "json", "cg", "1", "1/2")[1])
    assert data["deformed"]["j1"] == "1" and not data["classical"]["deformed"]
    for e in data["deformed"]["entries"]:
        assert HSeries.from_json(e["coeff"]).order == 8


def test_verify_pass_and_report(capsys):
    code, out, _ = run(capsys, "verify", "requal")
    assert code == 0 and out.startswith("[PASS] requal")
    code, out, _ = run(capsys, "--format", "json", "verify", "invariants", "--ordering", "normal", "--algebra", "plane")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    first = data["suites"][0]["checks"][0]
    assert first["name"] == "squared length under normal ordering"
    assert first["witness"]["invariant"] is False


def test_verify_failure_exit_code(capsys, monkeypatch):
    from qdeform import verify

    monkeypatch.setitem(verify.SUITES, "requal", lambda cfg: {"suite": "requal", "order": 1, "passed": False, "checks": [{"name": "x", "status": "fail", "witness": "w"}]})
    code, out, _ = run(capsys, "verify", "requal")
    assert code == 1 and "witness" in out


def test_usage_errors(capsys):
    assert run(capsys, "star", "x +", "y")[0] == 2
    assert run(capsys, "cg", "1/3", "1")[0] == 2
    assert run(capsys, "--max-degree", "2", "star", "x^2", "y")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["--order", "0", "star", "x", "y"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_config_validation():
    assert Config().order == 8 and Config().kind == "sympres"
    with pytest.raises(ValueError):
        Config(max_degree=0)
    with pytest.raises(ValueError):
        Config(algebra="torus")
