"""Phonetic codes used to merge spelling variants.

The Indic coder indexes one offset table by codepoint position inside the
Tamil or Malayalam block, so parallel letters in the two scripts share codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .normalize import MALAYALAM_BLOCK, TAMIL_BLOCK, in_block
from .resources import parse_tsv_table, read_resource
from .translit import BLOCKS, TranslitTable, roman_to_indic

CODE_LENGTH = 8
PREFIX = "sx:"


class SoundexError(ValueError):
    pass


@dataclass(frozen=True)
class IndicCharMap:
    codes: tuple[str, ...]
    version: str = "unversioned"

    def __post_init__(self):
        if len(self.codes) != 0x80:
            raise SoundexError(f"char map needs 128 entries, got {len(self.codes)}")
        for c in self.codes:
            if len(c) != 1 or not (c == "0" or c.isalnum()):
                raise SoundexError(f"bad code symbol {c!r}")

    def code(self, ch: str) -> str:
        cp = ord(ch)
        for lo, hi in (TAMIL_BLOCK, MALAYALAM_BLOCK):
            if lo <= cp <= hi:
                return self.codes[cp - lo]
        return "0"

    def to_rows(self) -> list[list[str]]:
        return [[f"{i:02x}", c] for i, c in enumerate(self.codes) if c != "0"]

    @classmethod
    def from_rows(cls, rows, version="unversioned") -> "IndicCharMap":
        codes = ["0"] * 0x80
        for off_hex, sym in rows:
            off = int(off_hex, 16)
            if not 0 <= off < 0x80:
                raise SoundexError(f"offset {off_hex} outside the block")
            codes[off] = sym
        return cls(tuple(codes), version)


def load_char_map(path: str | Path | None = None) -> IndicCharMap:
    text = Path(path).read_text(encoding="utf-8") if path else read_resource("soundex_indic.tsv")
    rows, version = parse_tsv_table(text)
    return IndicCharMap.from_rows(rows, version or "unversioned")


def soundex_indic(word: str, char_map: IndicCharMap) -> str:
    chars = [ch for ch in word if in_block(ch, TAMIL_BLOCK) or in_block(ch, MALAYALAM_BLOCK)]
    if not chars:
        raise SoundexError("empty word")
    first = chars[0]
    out = [first]
    prev = char_map.code(first)
    for ch in chars[1:]:
        sym = char_map.code(ch)
        # zeros are skipped without breaking a run, so geminates collapse
        if sym == "0" or sym == prev:
            continue
        out.append(sym)
        prev = sym
    return "".join(out)[:CODE_LENGTH].ljust(CODE_LENGTH, "0")


_EN_CODES = {}
for _letters, _digit in (("bfpv", "1"), ("cgjkqsxz", "2"), ("dt", "3"), ("l", "4"), ("mn", "5"), ("r", "6")):
    for _ch in _letters:
        _EN_CODES[_ch] = _digit


def soundex_english(word: str) -> str:
    """Classic American Soundex, lowercase, e.g. ``robert -> r163``.

    Vowels (and y) separate equal codes; h and w do not.
    """
    letters = [c for c in word.lower() if c.isascii() and c.isalpha()]
    if not letters:
        raise SoundexError(f"no letters in {word!r}")
    out = [letters[0]]
    prev = _EN_CODES.get(letters[0], "")
    for ch in letters[1:]:
        if ch in "hw":
            continue
        code = _EN_CODES.get(ch, "")
        if code and code != prev:
            out.append(code)
        prev = code
    return "".join(out)[:4].ljust(4, "0")


def harmonize_token(token: str, target_script: str, table: TranslitTable, char_map: IndicCharMap) -> str:
    """Map a token to its ``sx:`` feature, or return it unchanged if it has no letters."""
    block = BLOCKS[target_script]
    native = [c for c in token if in_block(c, block)]
    latin = [c for c in token if c.isascii() and c.isalpha()]
    try:
        if native and not latin:
            return PREFIX + soundex_indic("".join(native), char_map)
        if latin and not native and all(not c.isalpha() or c.isascii() for c in token):
            roman = "".join(latin).lower()
            return PREFIX + soundex_indic(roman_to_indic(roman, table), char_map)
        if latin:
            return PREFIX + soundex_english("".join(latin))
    except SoundexError:
        pass
    return token
