"""Regenerate the synthetic emoji-labelled fixture corpus in tests/fixtures/.

Labels are a function of the emoji polarity alone: positive emoji only ->
positive, negative only -> negative, one of each -> mixed_feelings, neutral
only -> unknown_state. Filler words are drawn independently of the label;
one polarity keyword per document adds a lexical cue.
"""

import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

POS = ["😍", "🔥", "👍", "❤"]
NEG = ["😡", "👎", "💩", "😠"]
NEU = ["🤔", "😐"]
FILLER = ["padam", "trailer", "intha", "naan", "paathen", "song", "music", "hero", "climax",
          "theatre", "inniku", "release", "nanba", "thalaivar", "scene", "first", "day", "show"]
KEYWORDS = {"positive": ["semma", "super", "vera level"], "negative": ["mokka", "waste", "worst"],
            "mixed_feelings": ["paravalla", "okay"], "unknown_state": ["eppo", "enna"]}
PER_LABEL = 20
VAL_PER_LABEL = 5


def make_doc(rng, label):
    words = rng.sample(FILLER, rng.randint(2, 5))
    if label == "positive":
        emo = [rng.choice(POS) for _ in range(rng.randint(1, 3))]
    elif label == "negative":
        emo = [rng.choice(NEG) for _ in range(rng.randint(1, 3))]
    elif label == "mixed_feelings":
        emo = [rng.choice(POS), rng.choice(NEG)]
    else:
        emo = [rng.choice(NEU)]
    words.insert(rng.randint(0, len(words)), rng.choice(KEYWORDS[label]))
    return " ".join(words) + " " + "".join(emo)


def main():
    rng = random.Random(20201216)
    train, val = [], []
    for label in KEYWORDS:
        docs = [make_doc(rng, label) for _ in range(PER_LABEL)]
        val += [(d, label) for d in docs[:VAL_PER_LABEL]]
        train += [(d, label) for d in docs[VAL_PER_LABEL:]]
    rng.shuffle(train)
    rng.shuffle(val)
    for name, rows in (("emoji_train.tsv", train), ("emoji_val.tsv", val)):
        with open(OUT / name, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("text\tcategory\n")
            for text, label in rows:
                fh.write(f"{text}\t{label}\n")
    print(f"wrote {len(train)} train and {len(val)} val docs to {OUT}")


if __name__ == "__main__":
    main()
