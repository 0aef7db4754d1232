"""Bundled grammars, sequences, alignments and expected reports.

======================  ==================================================
binary_sum              binary sums in CNF, the sequence ``1 + 0``
binary_sum_source       the same grammar before normalization
bluebossa               jazz brick subset for "Blue Bossa", 11 chords
self_embedding          ``a^n b^n``, the sequence ``a a b b``
======================  ==================================================

``mto_align.ttl`` maps the Blue Bossa bricks to minor and major
progressions. Some analyses of the tune write the eighth chord as
``Db:maj``; the fixtures use ``Db:maj7`` throughout, which is what the
grammar derives.
"""

from collections import namedtuple
import os


FIXTURE_DIR = os.path.dirname(os.path.abspath(__file__))


Fixture = namedtuple("Fixture", ["name", "grammar", "sequence", "alignment", "expected"])


def path(filename):
    return os.path.join(FIXTURE_DIR, filename)


def _optional(filename):
    p = path(filename)
    return p if os.path.exists(p) else None


def fixture(name, mode="dl"):
    """Paths of the files of fixture `name`; missing optional files are None."""
    grammar = path(name + ".cfg")
    if not os.path.exists(grammar):
        raise ValueError("no fixture named %r" % name)
    return Fixture(
        name,
        grammar,
        _optional(name + ".seq"),
        _optional("mto_align.ttl") if name == "bluebossa" else None,
        _optional("%s.%s.json" % (name, mode)),
    )


def fixtures():
    return sorted(f[:-4] for f in os.listdir(FIXTURE_DIR) if f.endswith(".cfg"))
