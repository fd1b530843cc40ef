#!/usr/bin/env python3
"""Regenerate the committed known-answer corpora.

The seeds below are the corpora's recorded provenance: running this script
must reproduce kats/*.kat byte for byte (test_acceptance criterion 8 and
tests/test_kat.py check exactly that).
"""

from pathlib import Path

from tortoise.kat import generate_kats, serialize_records

CORPORA = {
    "aes128.kat": ("aes128", 7, 10),
    "toy.kat": ("toy", 11, 10),
}


def main() -> None:
    kats_dir = Path(__file__).resolve().parent.parent / "kats"
    kats_dir.mkdir(exist_ok=True)
    for name, (cipher, seed, count) in CORPORA.items():
        path = kats_dir / name
        text = serialize_records(generate_kats(seed, count, cipher))
        changed = not path.exists() or path.read_text() != text
        path.write_text(text)
        print(f"{path}: {2 * count} records ({'updated' if changed else 'unchanged'})")


if __name__ == "__main__":
    main()
