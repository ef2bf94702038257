#!/usr/bin/env python3
# tools/gen_rule_tables.py
#
# Copyright 2026 The uniasr Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates data/tables/*.rules.

The transliteration engine consumes plain data files; this script is the
single place where table contents are authored. Sources are emitted in
NFKC + lowercase form because the engine only ever sees normalized text.

Usage: python3 tools/gen_rule_tables.py [output_dir]
"""

import sys
import unicodedata
from pathlib import Path

UNIVERSAL = set("abcdefghijklmnopqrstuvwxyz '")


def norm(s: str) -> str:
    return unicodedata.normalize("NFKC", unicodedata.normalize("NFKC", s).lower())


# Punctuation handling shared by every table: sentence punctuation is
# silent, dash-like separators become word boundaries, apostrophe-like
# marks fold to the ASCII apostrophe. Combining marks that survive NFKC
# (e.g. the dot-above left by lowercasing a dotted capital I) are silent.
PUNCT_RULES = [
    *((c, "") for c in '.,!?;:"'),
    *((c, "") for c in "«»„“”‘‚·"),
    *((c, "") for c in "¡¿"),
    *((c, "") for c in "،؛؟"),          # Arabic comma/semicolon/question
    *((c, "") for c in "।॥"),                  # dandas
    *((c, "") for c in "。、"),                  # ideographic stop/comma
    *((chr(cp), "") for cp in (0x0300, 0x0301, 0x0302, 0x0303, 0x0304,
                               0x0306, 0x0307, 0x0308, 0x030A, 0x030B,
                               0x030C, 0x0323, 0x0331)),
    *((c, " ") for c in "-_/‐‑‒–—―"),
    *((c, "'") for c in "’ʼʻ`"),
]

LATIN_SPECIALS = {
    "ß": "ss",   # sharp s
    "æ": "ae",
    "œ": "oe",
    "ø": "o",
    "đ": "d",    # d with stroke
    "ð": "d",    # eth
    "þ": "th",   # thorn
    "ł": "l",    # l with stroke
    "ħ": "h",    # h with stroke
    "ŋ": "ng",   # eng
    "ı": "i",    # dotless i
    "ĸ": "k",    # kra
    "ſ": "s",    # long s
    "ƀ": "b",
    "ɓ": "b",    # hook b (Hausa)
    "ɗ": "d",    # hook d
    "ə": "e",    # schwa (Azerbaijani)
    "ɛ": "e",    # open e
    "ɔ": "o",    # open o
    "ƙ": "k",    # hook k
    "ƴ": "y",    # hook y
    "ɲ": "n",
    "ʃ": "sh",
    "ʒ": "zh",
    "ɣ": "gh",
    "ʔ": "'",    # glottal stop
    "ǝ": "e",    # turned e
}


def gen_latin():
    rules = []
    ranges = [(0x00C0, 0x024F), (0x0250, 0x02AF), (0x1E00, 0x1EFF)]
    for lo, hi in ranges:
        for cp in range(lo, hi + 1):
            ch = chr(cp)
            if unicodedata.category(ch) not in ("Ll", "Lu", "Lo"):
                continue
            source = norm(ch)
            if all(c in UNIVERSAL for c in source):
                continue  # pass-through covers it
            target = ""
            ok = True
            for part in source:
                if part in LATIN_SPECIALS:
                    target += LATIN_SPECIALS[part]
                    continue
                base = "".join(c for c in unicodedata.normalize("NFD", part)
                               if unicodedata.category(c) != "Mn")
                folded = ""
                for b in base:
                    if b in LATIN_SPECIALS:
                        folded += LATIN_SPECIALS[b]
                    elif b in UNIVERSAL:
                        folded += b
                    else:
                        ok = False
                        break
                if not ok:
                    break
                target += folded
            if ok and target:
                rules.append((source, target))
    return rules


CYRILLIC = [
    ("а", "a"), ("б", "b"), ("в", "v"), ("г", "g"), ("д", "d"), ("е", "e"),
    ("ж", "zh"), ("з", "z"), ("и", "i"), ("й", "y"), ("к", "k"), ("л", "l"),
    ("м", "m"), ("н", "n"), ("о", "o"), ("п", "p"), ("р", "r"), ("с", "s"),
    ("т", "t"), ("у", "u"), ("ф", "f"), ("х", "kh"), ("ц", "ts"),
    ("ч", "ch"), ("ш", "sh"), ("щ", "shch"), ("ъ", ""), ("ы", "y"),
    ("ь", ""), ("э", "e"), ("ю", "yu"), ("я", "ya"), ("ё", "yo"),
    # East Slavic additions.
    ("і", "i"), ("ї", "yi"), ("є", "ye"), ("ґ", "g"), ("ў", "u"),
    # South Slavic.
    ("ј", "j"), ("љ", "lj"), ("њ", "nj"), ("ћ", "c"), ("ђ", "dj"),
    ("џ", "dz"), ("ѓ", "g"), ("ќ", "k"), ("ѕ", "dz"), ("ѐ", "e"),
    ("ѝ", "i"), ("ѣ", "e"),
    # Turkic, Mongolic, Iranian and Uralic extensions.
    ("ә", "a"), ("ғ", "gh"), ("җ", "j"), ("ҙ", "z"), ("қ", "q"),
    ("ҡ", "q"), ("ң", "ng"), ("ҥ", "ng"), ("ө", "o"), ("ҫ", "s"),
    ("ұ", "u"), ("ү", "u"), ("һ", "h"), ("ҳ", "h"), ("ҷ", "j"),
    ("ӣ", "i"), ("ӯ", "u"), ("ӑ", "a"), ("ӓ", "a"), ("ӗ", "e"),
    ("ӥ", "i"), ("ӧ", "o"), ("ӱ", "u"), ("ӳ", "u"), ("ӹ", "y"),
    ("ӏ", "'"),
    # Abkhaz subset.
    ("ҵ", "ts"), ("ҧ", "p"), ("ҭ", "t"), ("ҟ", "k"), ("ҩ", "o"),
]

GREEK = [
    # Diphthong digraphs before singles.
    ("ου", "ou"), ("ού", "ou"), ("αυ", "au"), ("αύ", "au"),
    ("ευ", "eu"), ("εύ", "eu"),
    ("α", "a"), ("ά", "a"), ("β", "v"), ("γ", "g"), ("δ", "d"),
    ("ε", "e"), ("έ", "e"), ("ζ", "z"), ("η", "i"), ("ή", "i"),
    ("θ", "th"), ("ι", "i"), ("ί", "i"), ("ϊ", "i"), ("ΐ", "i"),
    ("κ", "k"), ("λ", "l"), ("μ", "m"), ("ν", "n"), ("ξ", "x"),
    ("ο", "o"), ("ό", "o"), ("π", "p"), ("ρ", "r"), ("σ", "s"),
    ("ς", "s"), ("τ", "t"), ("υ", "y"), ("ύ", "y"), ("ϋ", "y"),
    ("ΰ", "y"), ("φ", "f"), ("χ", "ch"), ("ψ", "ps"), ("ω", "o"),
    ("ώ", "o"),
]

DEVANAGARI_CONSONANTS = [
    ("क", "k"), ("ख", "kh"), ("ग", "g"), ("घ", "gh"), ("ङ", "n"),
    ("च", "ch"), ("छ", "chh"), ("ज", "j"), ("झ", "jh"), ("ञ", "n"),
    ("ट", "t"), ("ठ", "th"), ("ड", "d"), ("ढ", "dh"), ("ण", "n"),
    ("त", "t"), ("थ", "th"), ("द", "d"), ("ध", "dh"), ("न", "n"),
    ("प", "p"), ("फ", "ph"), ("ब", "b"), ("भ", "bh"), ("म", "m"),
    ("य", "y"), ("र", "r"), ("ल", "l"), ("व", "v"), ("श", "sh"),
    ("ष", "sh"), ("स", "s"), ("ह", "h"), ("ळ", "l"),
    # Nukta consonants (stored decomposed after NFKC).
    ("क़", "q"), ("ख़", "kh"), ("ग़", "g"), ("ज़", "z"), ("ड़", "r"),
    ("ढ़", "rh"), ("फ़", "f"), ("य़", "y"),
]

DEVANAGARI_VOWEL_SIGNS = [
    ("ा", "aa"), ("ि", "i"), ("ी", "ii"), ("ु", "u"),
    ("ू", "uu"), ("ृ", "ri"), ("े", "e"), ("ै", "ai"),
    ("ो", "o"), ("ौ", "au"), ("ॉ", "o"), ("ॅ", "e"),
]

DEVANAGARI_INDEPENDENT = [
    ("अ", "a"), ("आ", "aa"), ("इ", "i"), ("ई", "ii"), ("उ", "u"),
    ("ऊ", "uu"), ("ऋ", "ri"), ("ए", "e"), ("ऐ", "ai"), ("ओ", "o"),
    ("औ", "au"), ("ऑ", "o"),
    ("ं", "n"), ("ँ", "n"), ("ः", "h"), ("ॐ", "om"),
]


def gen_devanagari():
    rules = []
    virama = "्"
    for cons, value in DEVANAGARI_CONSONANTS:
        rules.append((cons + virama, value))
        for sign, vowel in DEVANAGARI_VOWEL_SIGNS:
            rules.append((cons + sign, value + vowel))
        rules.append((cons, value + "a"))  # inherent vowel
    rules.extend(DEVANAGARI_INDEPENDENT)
    return rules


# Revised-Romanization values over conjoining jamo; the engine decomposes
# precomposed syllables first. Final-cluster values are the isolated
# pronunciations; liaison across syllables is out of scope.
HANGUL_LEADS = ["g", "kk", "n", "d", "tt", "r", "m", "b", "pp", "s", "ss",
                "", "j", "jj", "ch", "k", "t", "p", "h"]
HANGUL_VOWELS = ["a", "ae", "ya", "yae", "eo", "e", "yeo", "ye", "o", "wa",
                 "wae", "oe", "yo", "u", "wo", "we", "wi", "yu", "eu", "ui",
                 "i"]
HANGUL_TAILS = ["k", "k", "k", "n", "n", "n", "t", "l", "k", "m", "p", "l",
                "l", "p", "l", "m", "p", "p", "t", "t", "ng", "t", "t", "k",
                "t", "p", "t"]


def gen_hangul():
    rules = []
    for i, value in enumerate(HANGUL_LEADS):
        rules.append((chr(0x1100 + i), value))
    for i, value in enumerate(HANGUL_VOWELS):
        rules.append((chr(0x1161 + i), value))
    for i, value in enumerate(HANGUL_TAILS):
        rules.append((chr(0x11A8 + i), value))
    return rules


def emit(path: Path, name: str, rules):
    seen = {}
    lines = [f"# {name} transliteration rules",
             "# source<TAB>target, one rule per line"]
    for source, target in rules + PUNCT_RULES:
        source = norm(source)
        if not source or source in seen:
            continue
        assert all(c in UNIVERSAL for c in target), (name, source, target)
        seen[source] = target
        lines.append(f"{source}\t{target}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(seen)} rules)")


def main():
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "data/tables")
    out_dir.mkdir(parents=True, exist_ok=True)
    emit(out_dir / "latin.rules", "latin", gen_latin())
    emit(out_dir / "cyrillic.rules", "cyrillic", CYRILLIC)
    emit(out_dir / "greek.rules", "greek", GREEK)
    emit(out_dir / "devanagari.rules", "devanagari", gen_devanagari())
    emit(out_dir / "hangul.rules", "hangul", gen_hangul())


if __name__ == "__main__":
    main()
