"""Rewrite a raw catalog export in canonical form and verify it.

    python tools/canonicalize_catalog.py raw.txt src/genus_atlas/data/out.txt
"""

import sys

from genus_atlas.catalog import parse_catalog, serialize_catalog, verify_catalog


def main(src, dst):
    with open(src, encoding="utf-8") as fh:
        manifest, records = parse_catalog(fh)
    report = verify_catalog(manifest, records)
    print(report)
    if not report.ok:
        return 1
    with open(dst, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_catalog(manifest, records))
    return 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))
