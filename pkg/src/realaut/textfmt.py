"""Plain-text automaton format.

    base 2
    kind real
    initial q0
    accepting zu (2,0)
    q0 0 q0
    q0 0,1 q1        # several letters at once
    q0 . zu          # "." is the radix mark

Lines starting with "#" are comments.  Transitions left out go to a
rejecting sink that is added on load.
"""

from __future__ import annotations

from importlib import resources

from .automaton import STAR, Automaton, AutomatonError, from_transitions, letter_char, validate


class FormatError(AutomatonError):
    pass


def _letter(tok: str, base: int):
    if tok in (STAR, "⋆"):
        return STAR
    try:
        d = int(tok)
    except ValueError:
        raise FormatError(f"unknown letter {tok!r}") from None
    if not 0 <= d < base:
        raise FormatError(f"digit {d} outside base {base}")
    return d


def parse_automaton(text: str) -> Automaton:
    base = kind = initial = None
    accepting = []
    transitions = {}
    states = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip() if not raw.lstrip().startswith("#") else ""
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        try:
            if head == "base" and len(toks) == 2:
                base = int(toks[1])
                if base < 2:
                    raise FormatError("base must be at least 2")
            elif head == "kind" and len(toks) == 2:
                if toks[1] not in ("real", "fractional"):
                    raise FormatError(f"unknown kind {toks[1]!r}")
                kind = toks[1]
            elif head == "initial" and len(toks) == 2:
                initial = toks[1]
            elif head == "accepting":
                accepting.extend(toks[1:])
            elif head == "states":
                states.extend(toks[1:])
            elif len(toks) == 3:
                if base is None or kind is None:
                    raise FormatError("base and kind must precede transitions")
                src, letters, dst = toks
                for tok in letters.split(","):
                    letter = _letter(tok, base)
                    if letter == STAR and kind != "real":
                        raise FormatError("the radix mark is only allowed in real automata")
                    if (src, letter) in transitions and transitions[(src, letter)] != dst:
                        raise FormatError(f"nondeterminism: two transitions from {src} on {tok}")
                    transitions[(src, letter)] = dst
            else:
                raise FormatError(f"cannot parse {line!r}")
        except FormatError as e:
            raise FormatError(f"line {lineno}: {e}") from None
    if base is None or kind is None or initial is None:
        raise FormatError("missing base, kind or initial header")
    if not transitions:
        raise FormatError("totality: the automaton has no transitions")
    a = from_transitions(base, kind, transitions, initial, accepting, states=states or None)
    problems = validate(a)
    if problems:
        raise FormatError("; ".join(problems))
    return a


def serialize_automaton(a: Automaton) -> str:
    lines = [f"base {a.base}", f"kind {a.kind}", f"initial {a.names[a.initial]}",
             "accepting " + " ".join(a.names[q] for q in sorted(a.accepting))]
    lines.append("states " + " ".join(a.names))
    for q, row in enumerate(a.delta):
        for i, t in enumerate(row):
            lines.append(f"{a.names[q]} {letter_char(a.letters[i])} {a.names[t]}")
    return "\n".join(lines) + "\n"


def load_fixture(name: str) -> Automaton:
    """One of the shipped figure automata: "fig1" .. "fig6"."""
    text = resources.files("realaut.fixtures").joinpath(f"{name}.aut").read_text(encoding="utf-8")
    return parse_automaton(text)


FIXTURES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")
