"""Text schemas for series and transducer documents.

Series documents (schema tag ``padic-mahler-series-v1``)::

    schema padic-mahler-series-v1
    p 2
    n 1
    precision 16
    coeff 0 0
    coeff 1 0
    coeff 2 1

Coefficients are decimal residues, index-annotated; indices must run
0..M-1 without gaps.  Transducer documents (schema tag
``padic-transducer-v1``)::

    schema padic-transducer-v1
    p 2
    kind async
    initial wait
    trans wait 0 echo :
    trans wait 1 echo :
    trans echo 0 echo : 0
    trans echo 1 echo : 1

Each ``trans`` line is ``state letter next-state : output-letters``; a
synchronous document must put exactly one letter after the colon, an
asynchronous one any number including none.  Blank lines and ``#``
comments are ignored.  Both formats are versioned by their schema tag.
"""

from __future__ import annotations

from .errors import FormatError
from .mahler import MahlerSeries
from .transducer import AsyncTransducer, SyncTransducer

__all__ = [
    "SERIES_SCHEMA",
    "TRANSDUCER_SCHEMA",
    "parse_series",
    "parse_transducer",
    "serialize_series",
]

SERIES_SCHEMA = "padic-mahler-series-v1"
TRANSDUCER_SCHEMA = "padic-transducer-v1"


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def _int_field(tokens: list[str], name: str) -> int:
    if len(tokens) != 2 or tokens[0] != name:
        raise FormatError(f"expected '{name} <integer>', got {' '.join(tokens)!r}")
    try:
        return int(tokens[1])
    except ValueError:
        raise FormatError(f"bad integer in '{name}' line: {tokens[1]!r}")


def parse_series(text: str) -> MahlerSeries:
    lines = _lines(text)
    if not lines or lines[0] != ["schema", SERIES_SCHEMA]:
        raise FormatError(f"series document must start with 'schema {SERIES_SCHEMA}'")
    if len(lines) < 4:
        raise FormatError("series document is missing its header lines")
    p = _int_field(lines[1], "p")
    n = _int_field(lines[2], "n")
    precision = _int_field(lines[3], "precision")
    coeffs = []
    for tokens in lines[4:]:
        if len(tokens) != 3 or tokens[0] != "coeff":
            raise FormatError(f"expected 'coeff <index> <value>', got {' '.join(tokens)!r}")
        try:
            index, value = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise FormatError(f"bad coeff line: {' '.join(tokens)!r}")
        if index != len(coeffs):
            raise FormatError(
                f"coefficient indices must run 0,1,2,... without gaps; "
                f"got {index} after {len(coeffs) - 1}"
            )
        coeffs.append(value)
    if not coeffs:
        raise FormatError("series document lists no coefficients")
    try:
        return MahlerSeries.from_ints(p, n, precision, coeffs)
    except ValueError as exc:
        raise FormatError(str(exc))


def serialize_series(series: MahlerSeries) -> str:
    lines = [
        f"schema {SERIES_SCHEMA}",
        f"p {series.p}",
        f"n {series.n}",
        f"precision {series.precision}",
    ]
    for i, a in enumerate(series.coeffs):
        lines.append(f"coeff {i} {a.value}")
    return "\n".join(lines) + "\n"


def parse_transducer(text: str) -> SyncTransducer | AsyncTransducer:
    lines = _lines(text)
    if not lines or lines[0] != ["schema", TRANSDUCER_SCHEMA]:
        raise FormatError(
            f"transducer document must start with 'schema {TRANSDUCER_SCHEMA}'"
        )
    if len(lines) < 4:
        raise FormatError("transducer document is missing its header lines")
    p = _int_field(lines[1], "p")
    if len(lines[2]) != 2 or lines[2][0] != "kind" or lines[2][1] not in ("sync", "async"):
        raise FormatError("expected 'kind sync' or 'kind async'")
    kind = lines[2][1]
    if len(lines[3]) != 2 or lines[3][0] != "initial":
        raise FormatError("expected 'initial <state>'")
    initial = lines[3][1]

    transitions: dict[tuple[str, int], str] = {}
    outputs: dict[tuple[str, int], tuple[int, ...]] = {}
    for tokens in lines[4:]:
        if tokens[0] != "trans" or ":" not in tokens:
            raise FormatError(
                f"expected 'trans <state> <letter> <next> : <letters...>', "
                f"got {' '.join(tokens)!r}"
            )
        colon = tokens.index(":")
        if colon != 4:
            raise FormatError(f"malformed trans line: {' '.join(tokens)!r}")
        _, state, letter_s, nxt = tokens[:4]
        try:
            letter = int(letter_s)
            out_word = tuple(int(tok) for tok in tokens[5:])
        except ValueError:
            raise FormatError(f"non-integer letter in: {' '.join(tokens)!r}")
        if not 0 <= letter < p:
            raise FormatError(f"input letter {letter} outside 0..{p - 1}")
        for d in out_word:
            if not 0 <= d < p:
                raise FormatError(f"output letter {d} outside 0..{p - 1}")
        key = (state, letter)
        if key in transitions:
            raise FormatError(f"duplicate transition for state {state!r} letter {letter}")
        transitions[key] = nxt
        outputs[key] = out_word

    states = {initial} | {s for s, _ in transitions} | set(transitions.values())
    for s in sorted(states):
        for a in range(p):
            if (s, a) not in transitions:
                raise FormatError(f"state {s!r} has no transition on letter {a}")
    if kind == "sync":
        for key, word in outputs.items():
            if len(word) != 1:
                raise FormatError(
                    f"synchronous machines emit exactly one letter per step; "
                    f"state {key[0]!r} letter {key[1]} emits {len(word)}"
                )
        return SyncTransducer.from_tables(
            p, initial, transitions, {k: w[0] for k, w in outputs.items()},
            name="file",
        )
    return AsyncTransducer.from_tables(p, initial, transitions, outputs, name="file")
