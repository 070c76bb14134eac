#!/usr/bin/env python3
"""Regenerates data/emoji_table.tsv.

Names come from the Unicode character database, lowercased and reduced to
[a-z ] words. A hand-kept override map supplies the shorter CLDR-style
names for the popular emoji where the formal character name reads badly
(e.g. CLAPPING HANDS SIGN -> "clapping hands").
"""

import sys
import unicodedata

RANGES = [
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0x1FA70, 0x1FAFF),
    (0x2600, 0x26FF),
    (0x2700, 0x27BF),
]

EXTRAS = [0x2B50, 0x2B55, 0x2764, 0x263A, 0x2639]

# CLDR-style short names where the Unicode name differs.
OVERRIDES = {
    0x1F44F: "clapping hands",
    0x1F44D: "thumbs up",
    0x1F44E: "thumbs down",
    0x1F44C: "ok hand",
    0x1F44B: "waving hand",
    0x1F450: "open hands",
    0x1F64F: "folded hands",
    0x1F64C: "raising hands",
    0x1F4AA: "flexed biceps",
    0x1F446: "backhand index pointing up",
    0x1F447: "backhand index pointing down",
    0x1F448: "backhand index pointing left",
    0x1F449: "backhand index pointing right",
    0x261D: "index pointing up",
    0x270A: "raised fist",
    0x270B: "raised hand",
    0x270C: "victory hand",
    0x1F91D: "handshake",
    0x2764: "red heart",
    0x1F494: "broken heart",
    0x1F49B: "yellow heart",
    0x1F499: "blue heart",
    0x1F49A: "green heart",
    0x1F49C: "purple heart",
    0x1F5A4: "black heart",
    0x1F60D: "smiling face with heart eyes",
    0x1F618: "face blowing a kiss",
    0x1F61A: "kissing face with closed eyes",
    0x1F617: "kissing face",
    0x1F619: "kissing face with smiling eyes",
    0x1F642: "slightly smiling face",
    0x1F641: "slightly frowning face",
    0x1F600: "grinning face",
    0x1F603: "grinning face with big eyes",
    0x1F604: "grinning face with smiling eyes",
    0x1F601: "beaming face with smiling eyes",
    0x1F606: "grinning squinting face",
    0x1F605: "grinning face with sweat",
    0x1F923: "rolling on the floor laughing",
    0x1F60A: "smiling face with smiling eyes",
    0x1F607: "smiling face with halo",
    0x1F609: "winking face",
    0x1F60B: "face savoring food",
    0x1F61B: "face with tongue",
    0x1F61C: "winking face with tongue",
    0x1F61D: "squinting face with tongue",
    0x1F911: "money mouth face",
    0x1F917: "hugging face",
    0x1F914: "thinking face",
    0x1F910: "zipper mouth face",
    0x1F611: "expressionless face",
    0x1F636: "face without mouth",
    0x1F60F: "smirking face",
    0x1F612: "unamused face",
    0x1F644: "face with rolling eyes",
    0x1F62C: "grimacing face",
    0x1F925: "lying face",
    0x1F634: "sleeping face",
    0x1F637: "face with medical mask",
    0x1F912: "face with thermometer",
    0x1F915: "face with head bandage",
    0x1F922: "nauseated face",
    0x1F927: "sneezing face",
    0x1F635: "dizzy face",
    0x1F920: "cowboy hat face",
    0x1F60E: "smiling face with sunglasses",
    0x1F913: "nerd face",
    0x1F615: "confused face",
    0x1F61F: "worried face",
    0x2639: "frowning face",
    0x263A: "smiling face",
    0x1F62E: "face with open mouth",
    0x1F62F: "hushed face",
    0x1F632: "astonished face",
    0x1F633: "flushed face",
    0x1F626: "frowning face with open mouth",
    0x1F627: "anguished face",
    0x1F628: "fearful face",
    0x1F630: "anxious face with sweat",
    0x1F625: "sad but relieved face",
    0x1F622: "crying face",
    0x1F62D: "loudly crying face",
    0x1F631: "face screaming in fear",
    0x1F616: "confounded face",
    0x1F623: "persevering face",
    0x1F61E: "disappointed face",
    0x1F613: "downcast face with sweat",
    0x1F629: "weary face",
    0x1F62B: "tired face",
    0x1F624: "face with steam from nose",
    0x1F621: "pouting face",
    0x1F620: "angry face",
    0x1F92C: "face with symbols on mouth",
    0x1F608: "smiling face with horns",
    0x1F47F: "angry face with horns",
    0x1F480: "skull",
    0x1F4A9: "pile of poo",
    0x1F921: "clown face",
    0x1F479: "ogre",
    0x1F47B: "ghost",
    0x1F47D: "alien",
    0x1F916: "robot",
    0x1F63A: "grinning cat",
    0x1F638: "grinning cat with smiling eyes",
    0x1F639: "cat with tears of joy",
    0x1F63B: "smiling cat with heart eyes",
    0x1F648: "see no evil monkey",
    0x1F649: "hear no evil monkey",
    0x1F64A: "speak no evil monkey",
    0x1F525: "fire",
    0x1F4AF: "hundred points",
    0x1F389: "party popper",
    0x1F38A: "confetti ball",
    0x2705: "check mark button",
    0x274C: "cross mark",
    0x26A0: "warning",
    0x1F6A8: "police car light",
    0x1F4A5: "collision",
    0x1F4A4: "zzz",
    0x1F4A6: "sweat droplets",
    0x1F4A8: "dashing away",
    0x1F440: "eyes",
    0x1F445: "tongue",
    0x1F444: "mouth",
}

# Common country flags, encoded as regional-indicator pairs.
FLAGS = {
    "us": "flag united states",
    "gb": "flag united kingdom",
    "ca": "flag canada",
    "au": "flag australia",
    "de": "flag germany",
    "fr": "flag france",
    "es": "flag spain",
    "it": "flag italy",
    "pt": "flag portugal",
    "br": "flag brazil",
    "mx": "flag mexico",
    "in": "flag india",
    "pk": "flag pakistan",
    "cn": "flag china",
    "jp": "flag japan",
    "kr": "flag south korea",
    "ru": "flag russia",
    "tr": "flag turkey",
    "sa": "flag saudi arabia",
    "eg": "flag egypt",
    "ng": "flag nigeria",
    "za": "flag south africa",
    "ie": "flag ireland",
    "nl": "flag netherlands",
    "se": "flag sweden",
}

ZWJ_SEQUENCES = [
    ([0x2764, 0xFE0F, 0x200D, 0x1F525], "heart on fire"),
    ([0x1F468, 0x200D, 0x1F4BB], "man technologist"),
    ([0x1F469, 0x200D, 0x1F4BB], "woman technologist"),
    ([0x1F926, 0x200D, 0x2640, 0xFE0F], "woman facepalming"),
    ([0x1F926, 0x200D, 0x2642, 0xFE0F], "man facepalming"),
    ([0x1F937, 0x200D, 0x2640, 0xFE0F], "woman shrugging"),
    ([0x1F937, 0x200D, 0x2642, 0xFE0F], "man shrugging"),
]


def sanitize(name: str) -> str:
    name = name.lower()
    name = "".join(c if ("a" <= c <= "z" or c == " ") else " " for c in name)
    return " ".join(name.split())


def main() -> int:
    rows = []
    seen = set()

    def emit(codepoints, name):
        name = sanitize(name)
        key = tuple(codepoints)
        if not name or key in seen:
            return
        seen.add(key)
        rows.append((key, name))

    for cp, name in sorted(OVERRIDES.items()):
        emit([cp], name)
        emit([cp, 0xFE0F], name)  # emoji-presentation variant

    for lo, hi in RANGES:
        for cp in range(lo, hi + 1):
            try:
                name = unicodedata.name(chr(cp))
            except ValueError:
                continue
            emit([cp], name)
    for cp in EXTRAS:
        try:
            emit([cp], unicodedata.name(chr(cp)))
        except ValueError:
            pass

    for code, name in sorted(FLAGS.items()):
        pair = [0x1F1E6 + ord(code[0]) - ord("a"), 0x1F1E6 + ord(code[1]) - ord("a")]
        emit(pair, name)
    for seq, name in ZWJ_SEQUENCES:
        emit(seq, name)

    rows.sort()
    out = sys.argv[1] if len(sys.argv) > 1 else "data/emoji_table.tsv"
    with open(out, "w", encoding="utf-8") as fh:
        for key, name in rows:
            fh.write(" ".join(f"{cp:X}" for cp in key) + "\t" + name + "\n")
    print(f"wrote {len(rows)} entries to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
