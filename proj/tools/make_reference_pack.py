#!/usr/bin/env python3
"""Generates packs/iqro: the reference Iqro' 1-4 content pack.

Letters follow the standard 28-letter hijaiyah chart. Volume 1 drills each
letter with fatha, volume 2 the long (mad) fatha, volume 3 kasra and damma
next to fatha, volume 4 the three tanwin forms. Audio files are silent
placeholders; replace them with real recordings keeping the same names.
"""

import argparse
import json
import pathlib
import struct

FATHA, KASRA, DAMMA = "َ", "ِ", "ُ"
FATHATAN, KASRATAN, DAMMATAN = "ً", "ٍ", "ٌ"
ALIF = "ا"

# key, letter, name, consonant used in transliteration
LETTERS = [
    ("alif", "ا", "alif", ""),
    ("ba", "ب", "ba", "b"),
    ("ta", "ت", "ta", "t"),
    ("tsa", "ث", "tsa", "ts"),
    ("jim", "ج", "jim", "j"),
    ("hha", "ح", "ḥa", "ḥ"),
    ("kha", "خ", "kha", "kh"),
    ("dal", "د", "dal", "d"),
    ("dzal", "ذ", "dzal", "dz"),
    ("ra", "ر", "ra", "r"),
    ("zai", "ز", "zai", "z"),
    ("sin", "س", "sin", "s"),
    ("syin", "ش", "syin", "sy"),
    ("shad", "ص", "shad", "sh"),
    ("dhad", "ض", "dhad", "dh"),
    ("tha", "ط", "tha", "th"),
    ("zha", "ظ", "zha", "zh"),
    ("ain", "ع", "'ain", "'"),
    ("ghain", "غ", "ghain", "gh"),
    ("fa", "ف", "fa", "f"),
    ("qaf", "ق", "qaf", "q"),
    ("kaf", "ك", "kaf", "k"),
    ("lam", "ل", "lam", "l"),
    ("mim", "م", "mim", "m"),
    ("nun", "ن", "nun", "n"),
    ("wau", "و", "wau", "w"),
    ("ha", "ه", "ha", "h"),
    ("ya", "ي", "ya", "y"),
]
BY_KEY = {k: (letter, name, cons) for k, letter, name, cons in LETTERS}

# Letter groups, one materi each, in the order the Iqro' books introduce them.
GROUPS = [
    ["alif", "ba"],
    ["ta", "tsa"],
    ["jim", "hha", "kha"],
    ["dal", "dzal", "ra", "zai"],
    ["sin", "syin", "shad", "dhad"],
    ["tha", "zha", "ain", "ghain"],
    ["fa", "qaf", "kaf", "lam"],
    ["mim", "nun", "wau", "ha", "ya"],
]

ABOUT = (
    "Belajar Membaca Iqro': a digital companion to the Iqro' books, volumes 1 to 4. "
    "Every glyph is paired with its pronunciation so learners can practise reading "
    "hijaiyah letters without a teacher at hand."
)
HOW_TO = (
    "Choose Materi to open a lesson, then tap any letter to hear how it is read. "
    "Use the page buttons to move through the lesson. Choose Test to check yourself: "
    "listen to the sound and pick the matching letter. Alphabet shows every "
    "hijaiyah letter with its name."
)


def base_glyph(key, mark):
    letter, _, _ = BY_KEY[key]
    if key == "alif":
        # alif carries the vowel on a hamza
        if mark in (KASRA, KASRATAN):
            return "إ" + mark
        return "أ" + mark
    return letter + mark


def vowel_translit(key, vowel):
    _, _, cons = BY_KEY[key]
    return cons + vowel


def item(items, item_id, text, translit, key):
    assert item_id not in items, item_id
    items[item_id] = {
        "text": text,
        "translit": translit,
        "base_letter": key,
        "audio": f"assets/audio/{item_id}.wav",
    }
    return item_id


def lesson(volume, ordinal, rows):
    review = [list(reversed(r)) for r in reversed(rows)]
    return {
        "id": f"iqro{volume}_materi{ordinal}",
        "title": f"Materi {ordinal}",
        "pages": [{"rows": rows}, {"rows": review}],
    }


def build():
    items = {}
    volumes = []

    fatha = {}
    lessons = []
    for n, group in enumerate(GROUPS, 1):
        row = [item(items, f"{k}_fatha", base_glyph(k, FATHA), vowel_translit(k, "a"), k)
               for k in group]
        for k, i in zip(group, row):
            fatha[k] = i
        lessons.append(lesson(1, n, [row]))
    volumes.append({"index": 1, "title": "Iqro' 1", "lessons": lessons})

    lessons = []
    mad_groups = [GROUPS[0][1:] + GROUPS[1]] + GROUPS[2:]
    for n, group in enumerate(mad_groups, 1):
        row = [item(items, f"{k}_mad", BY_KEY[k][0] + FATHA + ALIF, vowel_translit(k, "aa"), k)
               for k in group]
        lessons.append(lesson(2, n, [[fatha[k] for k in group], row]))
    volumes.append({"index": 2, "title": "Iqro' 2", "lessons": lessons})

    lessons = []
    for n, group in enumerate(GROUPS, 1):
        kasra = [item(items, f"{k}_kasra", base_glyph(k, KASRA), vowel_translit(k, "i"), k)
                 for k in group]
        damma = [item(items, f"{k}_damma", base_glyph(k, DAMMA), vowel_translit(k, "u"), k)
                 for k in group]
        lessons.append(lesson(3, n, [[fatha[k] for k in group], kasra, damma]))
    volumes.append({"index": 3, "title": "Iqro' 3", "lessons": lessons})

    lessons = []
    for n, group in enumerate(GROUPS, 1):
        rows = []
        for mark, suffix, vowel in ((FATHATAN, "fathatan", "an"),
                                    (KASRATAN, "kasratan", "in"),
                                    (DAMMATAN, "dammatan", "un")):
            rows.append([item(items, f"{k}_{suffix}", base_glyph(k, mark),
                              vowel_translit(k, vowel), k) for k in group])
        lessons.append(lesson(4, n, rows))
    volumes.append({"index": 4, "title": "Iqro' 4", "lessons": lessons})

    alphabet = [{"key": k, "text": letter, "translit": name,
                 "audio": f"assets/audio/letters/{k}.wav"} for k, letter, name, _ in LETTERS]

    translits = [v["translit"] for v in items.values()]
    assert len(set(translits)) == len(translits), "transliterations must be unique"

    return {
        "format_version": 1,
        "title": "Belajar Membaca Iqro' 1-4",
        "about": ABOUT,
        "how_to": HOW_TO,
        "alphabet": alphabet,
        "items": {k: items[k] for k in sorted(items)},
        "volumes": volumes,
    }


def silent_wav(ms=100):
    rate = 8000
    samples = rate * ms // 1000
    header = b"RIFF" + struct.pack("<I", 36 + samples) + b"WAVEfmt "
    header += struct.pack("<IHHIIHH", 16, 1, 1, rate, rate, 1, 8)
    header += b"data" + struct.pack("<I", samples)
    return header + b"\x80" * samples


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", type=pathlib.Path, nargs="?",
                        default=pathlib.Path(__file__).resolve().parent.parent / "packs" / "iqro")
    args = parser.parse_args()
    pack = build()
    args.out.mkdir(parents=True, exist_ok=True)
    text = json.dumps(pack, ensure_ascii=False, indent=2) + "\n"
    (args.out / "pack.json").write_text(text, encoding="utf-8", newline="\n")
    wav = silent_wav()
    paths = [a["audio"] for a in pack["alphabet"]] + [i["audio"] for i in pack["items"].values()]
    for rel in paths:
        target = args.out / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(wav)
    print(f"wrote {len(pack['items'])} items, {len(paths)} audio files to {args.out}")


if __name__ == "__main__":
    main()
