"""Bundled loop corpus.

Each ``*.loop`` file may carry annotation comments::

    #@ prf: RealTerminating        expected verdict of the prf mode
    #@ lprf: IntTerminating        expected verdict of the lprf mode
    #@ wlprf: y ; x - x*y          a hand-written lexicographic ranking function
    #@ rf: x                       a hand-written linear ranking function
"""

from dataclasses import dataclass
from importlib import resources

from ..formula import parse
from ..polyring import Polynomial


@dataclass(frozen=True)
class Entry:
    name: str
    text: str
    expect: dict
    wlprf: tuple = ()
    rf: Polynomial = None

    @property
    def formula(self):
        return parse(self.text)

    @property
    def dimension(self):
        return len(self.wlprf)


def _annotations(text):
    notes = {}
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#@"):
            key, _, value = line[2:].partition(":")
            notes[key.strip()] = value.strip()
    return notes


def _entry(name, text):
    notes = _annotations(text)
    expect = {m: notes[m] for m in ("prf", "lprf") if m in notes}
    wlprf = tuple(Polynomial.parse(p) for p in notes.get("wlprf", "").split(";") if p.strip())
    rf = Polynomial.parse(notes["rf"]) if "rf" in notes else None
    return Entry(name, text, expect, wlprf, rf)


def corpus_names():
    return sorted(
        p.name[: -len(".loop")] for p in resources.files(__name__).iterdir() if p.name.endswith(".loop")
    )


def load_entry(name):
    text = resources.files(__name__).joinpath(f"{name}.loop").read_text(encoding="utf-8")
    return _entry(name, text)


def load_corpus():
    return [load_entry(n) for n in corpus_names()]


__all__ = ["Entry", "corpus_names", "load_corpus", "load_entry"]
