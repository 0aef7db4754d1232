import itertools
import json
import os
import random
import subprocess
import sys

import pytest  # noqa
from pytest import skip, raises  # noqa

from cfgowl.fixtures import fixture, path as fixture_path
from cfgowl.grammar import Production, make_grammar, parse_grammar, terminal, variable
from cfgowl.owl import read_turtle
from cfgowl.parser import read_sequence


ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def assert_equal(expected, result):
    print("Expected:\n%s\n" % (expected,))
    print("Got:\n%s\n" % (result,))
    assert expected == result


def read_text(filename):
    with open(fixture_path(filename), encoding="utf-8") as f:
        return f.read()


def load_grammar(name):
    return parse_grammar(read_text(name + ".cfg"))


def load_sequence(name):
    return read_sequence(read_text(name + ".seq"))


def load_alignment():
    return read_turtle(read_text("mto_align.ttl"))


def load_expected(name, mode="dl"):
    with open(fixture(name, mode).expected, encoding="utf-8") as f:
        return json.load(f)


def classes_by_position(report):
    return [list(row.classes) for row in report.rows]


def random_cnf_grammar(seed, nvariables=4, terminals=("a", "b"), max_alternatives=3):
    """Strict CNF grammar drawn from random.Random(seed); every variable has a production."""
    rng = random.Random(seed)
    names = ["S"] + ["V%d" % i for i in range(1, nvariables)]
    variables = [variable(n) for n in names]
    productions = []
    for v in variables:
        for _ in range(rng.randint(1, max_alternatives)):
            if rng.random() < 0.6:
                rhs = (rng.choice(variables), rng.choice(variables))
            else:
                rhs = (terminal(rng.choice(terminals)),)
            productions.append(Production(v, rhs))
    if not any(len(p.rhs) == 1 for p in productions):
        productions.append(Production(variables[0], (terminal(terminals[0]),)))
    return make_grammar(productions, start=variables[0])._replace(duplicates=())


def random_grammar(seed, nvariables=4, terminals=("a", "b"), max_alternatives=3, max_rhs=4):
    """Grammar in no normal form: right-hand sides of 1 to `max_rhs` mixed symbols."""
    rng = random.Random(seed)
    variables = [variable(n) for n in ["S"] + ["V%d" % i for i in range(1, nvariables)]]
    symbols = variables + [terminal(t) for t in terminals]
    productions = []
    for v in variables:
        for _ in range(rng.randint(1, max_alternatives)):
            rhs = tuple(rng.choice(symbols) for _ in range(rng.randint(1, max_rhs)))
            productions.append(Production(v, rhs))
    return make_grammar(productions, start=variables[0])._replace(duplicates=())


def all_sequences(alphabet, max_len):
    return [s for n in range(1, max_len + 1) for s in itertools.product(alphabet, repeat=n)]


def run_cli(args, input=None, cwd=None):
    """Run ``python -m cfgowl`` and return (returncode, stdout, stderr)."""
    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join(filter(None, [ROOT, env.get("PYTHONPATH")]))
    x = subprocess.Popen(
        [sys.executable, "-m", "cfgowl"] + list(args),
        stdin=subprocess.PIPE,
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        cwd=cwd,
        env=env,
    )
    input_buf = input.encode() if input else None
    out, err = x.communicate(input=input_buf)
    return x.returncode, out.decode("utf-8"), err.decode("utf-8")
