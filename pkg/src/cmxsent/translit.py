"""Rule-based Roman -> Tamil / Malayalam transliteration.

Greedy longest match, left to right, no backtracking. Consonant rules emit a
trailing virama; when a vowel rule follows, the virama is replaced by the
vowel sign (or dropped for the inherent ``a``). Characters no rule covers pass
through unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .normalize import MALAYALAM_BLOCK, TAMIL_BLOCK
from .resources import parse_tsv_table, read_resource

BLOCKS = {"ta": TAMIL_BLOCK, "ml": MALAYALAM_BLOCK}
VIRAMA_OFFSET = 0x4D
INITIAL = "^"

# independent vowel offset -> dependent sign offset; shared by both blocks
_VOWEL_SIGN = {
    0x06: 0x3E, 0x07: 0x3F, 0x08: 0x40, 0x09: 0x41, 0x0A: 0x42,
    0x0E: 0x46, 0x0F: 0x47, 0x10: 0x48, 0x12: 0x4A, 0x13: 0x4B, 0x14: 0x4C,
}
_INHERENT_A = 0x05


class TranslitError(ValueError):
    pass


@dataclass(frozen=True)
class TranslitTable:
    script: str
    rules: tuple[tuple[str, str], ...]
    version: str = "unversioned"
    _initial: dict = field(default=None, repr=False, compare=False)
    _medial: dict = field(default=None, repr=False, compare=False)
    _maxlen: int = field(default=0, repr=False, compare=False)

    def __post_init__(self):
        if self.script not in BLOCKS:
            raise TranslitError(f"unknown script {self.script!r}")
        lo, hi = BLOCKS[self.script]
        seen = set()
        initial, medial = {}, {}
        for roman, native in self.rules:
            if roman in seen:
                raise TranslitError(f"duplicate roman sequence {roman!r}")
            seen.add(roman)
            if not native or not all(lo <= ord(c) <= hi for c in native):
                raise TranslitError(f"rule {roman!r}: output outside the {self.script} block")
            if roman.startswith(INITIAL):
                initial[roman[1:]] = native
            else:
                medial[roman] = native
        ordered = tuple(sorted(self.rules, key=lambda r: (-len(r[0].lstrip(INITIAL)), r[0])))
        object.__setattr__(self, "rules", ordered)
        object.__setattr__(self, "_initial", initial)
        object.__setattr__(self, "_medial", medial)
        object.__setattr__(self, "_maxlen", max((len(r.lstrip(INITIAL)) for r, _ in self.rules), default=0))

    @property
    def base(self) -> int:
        return BLOCKS[self.script][0]

    def match(self, token: str, pos: int) -> tuple[str, str] | None:
        """Longest rule matching at ``pos``; word-initial rules win length ties."""
        for n in range(min(self._maxlen, len(token) - pos), 0, -1):
            piece = token[pos:pos + n]
            if pos == 0 and piece in self._initial:
                return piece, self._initial[piece]
            if piece in self._medial:
                return piece, self._medial[piece]
        return None

    def to_rows(self) -> list[list[str]]:
        return [[r, n] for r, n in self.rules]


def load_table(script: str, path: str | Path | None = None) -> TranslitTable:
    text = Path(path).read_text(encoding="utf-8") if path else read_resource(f"translit_{script}.tsv")
    rows, version = parse_tsv_table(text)
    return TranslitTable(script, tuple(rows), version or "unversioned")


def _is_vowel(native: str, base: int) -> bool:
    return len(native) == 1 and 0x05 <= ord(native) - base <= 0x14


def roman_to_indic(token: str, table: TranslitTable) -> str:
    base = table.base
    virama = chr(base + VIRAMA_OFFSET)
    out: list[str] = []
    pos = 0
    while pos < len(token):
        hit = table.match(token, pos)
        if hit is None:
            out.append(token[pos])
            pos += 1
            continue
        roman, native = hit
        if _is_vowel(native, base) and out and out[-1].endswith(virama):
            stem = out[-1][:-1]
            offset = ord(native) - base
            if offset == _INHERENT_A:
                out[-1] = stem
            elif offset in _VOWEL_SIGN:
                out[-1] = stem + chr(base + _VOWEL_SIGN[offset])
            else:
                out.append(native)
        else:
            out.append(native)
        pos += len(roman)
    return "".join(out)
