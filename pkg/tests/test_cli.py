import io
import json

import pytest

from selfsim.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["alpha", "--eta", "int:2", "-n", "5"], "1 0 0 0 0\n"),
        (["alpha", "--eta", "int:6", "-n", "4"], "1 1 1 0\n"),
        (["digits", "--eta", "int:6", "--value", "2", "-n", "5"], "01110\n"),
        (["digits", "--eta", "int:6", "--value", "0", "-n", "7"], "0000000\n"),
        (["digits", "--eta", "int:2", "--value", "3", "-n", "4"], "1100\n"),
        (["act", "--machine", "adding", "--element", "1", "--vertex", "011"], "111\n"),
        (["act", "--machine", "adding", "--element", "1", "--vertex", "111"], "000\n"),
    ],
)
def test_outputs(argv, expected):
    assert run(*argv) == (0, expected)


def test_alpha_first_digit():
    for eta in ["int:-2", "rat:2/3", "seed:0xC0FFEE:128", "seed:3:20"]:
        code, out = run("alpha", "--eta", eta, "-n", "10")
        assert code == 0 and out.split()[0] == "1"


def test_alpha_verbose():
    code, out = run("alpha", "--eta", "int:6", "-n", "2", "--verbose")
    assert out.splitlines()[1:] == ["p0\t2", "p1\t-2/3", "p2\t-10/9"]


@pytest.mark.parametrize(
    "machine, element",
    [
        ("adding", "identity"),
        (json.dumps({"type": "zomega", "eta": "int:6"}), "identity"),
        (json.dumps({"type": "c2", "base": "adding"}), json.dumps({"vec": {}, "sigma": 0})),
        (json.dumps({"type": "product", "left": "adding", "right": "adding"}), "identity"),
        (json.dumps({"type": "economical", "base": "adding", "d": 3}), "[0, 0, 0]"),
        (json.dumps({"type": "lamplighter", "base": "adding", "k": 2}), json.dumps({"lamps": [], "base": 0})),
    ],
)
def test_identity_echoes(machine, element):
    code, out = run("act", "--machine", machine, "--element", element, "--vertex", "0110")
    assert (code, out) == (0, "0110\n")


def test_element_grammars():
    z = json.dumps({"type": "zomega", "eta": "int:6"})
    assert run("act", "--machine", z, "--element", '{"0": 1}', "--vertex", "011")[1] == "111\n"
    d = json.dumps({"type": "dyadic", "eta": "int:6"})
    assert run("act", "--machine", d, "--element", '{"rational": "1/3"}', "--vertex", "000")[0] == 0
    assert run("act", "--machine", d, "--element", '{"digits": [1, 0, 0, 0]}', "--vertex", "000")[1] == "100\n"
    lamp = json.dumps({"type": "lamplighter", "base": "adding"})
    code, out = run("act", "--machine", lamp, "--element", '{"lamps": [{"pos": 0, "val": 1}], "base": 0}', "--vertex", "0")
    assert code == 0 and out == "2\n"


def test_portrait_format():
    code, out = run("portrait", "--machine", "adding", "--element", "1", "--depth", "2")
    assert out == "ε\t(0 1)\n0\t()\n1\t(0 1)\n"


def test_states_format():
    code, out = run("states", "--machine", "adding", "--element", "1", "--budget", "10")
    assert out.splitlines() == ["count 2", "status closed", "+1", "0"]
    lamp = json.dumps({"type": "lamplighter", "base": "adding"})
    code, out = run("states", "--machine", lamp, "--element", '{"lamps": [{"pos": 0, "val": 1}]}')
    assert out.splitlines()[:2] == ["count 2", "status closed"]


def test_verify_action_axioms():
    code, out = run("verify", "--machine", "adding", "--suite", "action-axioms", "--trials", "100", "--seed", "7")
    assert code == 0
    assert out and all(line.startswith("PASS") for line in out.splitlines())


@pytest.mark.parametrize(
    "machine, suite, extra",
    [
        ("adding", "digits-roundtrip", ["--eta", "int:6", "--depth", "64"]),
        (json.dumps({"type": "zomega", "eta": "seed:0xC0FFEE:128"}), "digits-roundtrip", ["--depth", "100"]),
        (json.dumps({"type": "zomega", "eta": "int:6"}), "intertwining", []),
        (json.dumps({"type": "c2", "base": "adding"}), "corefree", ["--depth", "10"]),
        ("adding", "transitivity", ["--depth", "10"]),
        ("adding", "finite-state", []),
        ("adding", "block-identity", []),
    ],
)
def test_verify_suites(machine, suite, extra):
    code, out = run("verify", "--machine", machine, "--suite", suite, "--seed", "3", *extra)
    assert code == 0, out


def test_verify_failure_exit():
    z = json.dumps({"type": "zomega", "eta": "seed:0xC0FFEE:128", "max_index": 1})
    code, out = run("verify", "--machine", z, "--suite", "finite-state", "--budget", "50", "--seed", "0")
    assert code == 1 and out.startswith("FAIL")


def test_determinism():
    argv = ["verify", "--machine", json.dumps({"type": "lamplighter", "base": "adding"}),
            "--suite", "action-axioms", "--trials", "50", "--seed", "9"]
    assert run(*argv) == run(*argv)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["alpha", "--eta", "int:4", "-n", "3"], 2),
        (["alpha", "--eta", "rat:2/4", "-n", "3"], 2),
        (["digits", "--eta", "int:6", "--value", "1/2"], 2),
        (["alpha", "--eta", "seed:1:10", "-n", "20"], 3),
        (["digits", "--eta", "seed:1:10", "--value", "1/3", "-n", "20"], 3),
        (["act", "--machine", "nonsense", "--vertex", "0"], 2),
        (["act", "--machine", "adding", "--element", "1", "--vertex", "012"], 2),
    ],
)
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_verify_requires_seed():
    with pytest.raises(SystemExit) as exc:
        run("verify", "--machine", "adding", "--suite", "action-axioms")
    assert exc.value.code == 2
