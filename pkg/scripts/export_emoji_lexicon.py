"""Convert a full Emoji Sentiment Ranking CSV into the two-column lexicon format.

    python3 scripts/export_emoji_lexicon.py Emoji_Sentiment_Data_v1.0.csv emoji_lexicon.csv
"""

import csv
import sys

from cmxsent.emoji import load_base_lexicon


def main(argv=None):
    src, dst = (sys.argv[1:] if argv is None else argv)[:2]
    lexicon = load_base_lexicon(src)
    with open(dst, "w", encoding="utf-8", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["emoji", "sentiment_score"])
        for emoji, entry in sorted(lexicon.entries.items()):
            out.writerow([emoji, repr(entry.base_score)])
    print(f"wrote {len(lexicon.entries)} emoji to {dst}")


if __name__ == "__main__":
    main()
