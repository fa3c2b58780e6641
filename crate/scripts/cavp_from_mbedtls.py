#!/usr/bin/env python3
"""Rebuild NIST CAVS 14.3 HMAC_DRBG response files from the Mbed TLS test suites.

Mbed TLS ships the official HMAC_DRBG known-answer vectors in its
`tests/suites/test_suite_hmac_drbg.{no_reseed,nopr,pr}.data` files, with the
entropy-side fields concatenated into a single hex argument. This script splits
them back into the `.rsp` layout published by CAVP.

Usage: cavp_from_mbedtls.py <mbedtls>/tests/suites <output-dir>
"""

import re
import sys
from pathlib import Path

# (mechanism tag, entropy input bits, nonce bits) per hash, as in the CAVP files.
HASHES = {
    "MBEDTLS_MD_SHA1": ("SHA-1", 128, 64),
    "MBEDTLS_MD_SHA224": ("SHA-224", 192, 96),
    "MBEDTLS_MD_SHA256": ("SHA-256", 256, 128),
    "MBEDTLS_MD_SHA384": ("SHA-384", 256, 128),
    "MBEDTLS_MD_SHA512": ("SHA-512", 256, 128),
}

LINE = re.compile(r'^(hmac_drbg_\w+):(MBEDTLS_MD_\w+):(.*)$')


def cases(path):
    title = None
    for line in path.read_text().splitlines():
        if line.startswith("HMAC_DRBG NIST"):
            title = line.split(" #")[0]
        m = LINE.match(line.strip())
        if m:
            args = [a.strip('"') for a in m.group(3).split(":")]
            yield title, m.group(2), args


def split(hexstr, *bits):
    out, pos = [], 0
    for b in bits:
        n = b // 4
        out.append(hexstr[pos:pos + n])
        pos += n
    assert pos == len(hexstr), "entropy field length does not match the hash table"
    return out


def bitlen(h):
    return len(h) * 4


def render(title, groups):
    lines = [
        "# CAVS 14.3",
        f'# "HMAC_DRBG" information for "{title}"',
        "# Rebuilt from the Mbed TLS test-suite copy of the NIST response file.",
        "",
    ]
    for header, records in groups:
        lines += [f"[{header['mech']}]"]
        for key in ("PredictionResistance", "EntropyInputLen", "NonceLen",
                    "PersonalizationStringLen", "AdditionalInputLen", "ReturnedBitsLen"):
            lines.append(f"[{key} = {header[key]}]")
        lines.append("")
        for count, fields in enumerate(records):
            lines.append(f"COUNT = {count}")
            for k, v in fields:
                lines.append(f"{k} = {v}")
            lines.append("")
    return "\n".join(lines)


def convert(path, kind):
    groups = []
    current_key, current = None, None
    for title, md, args in cases(path):
        mech, ent_bits, nonce_bits = HASHES[md]
        if kind == "no_reseed":
            ent, pers, add1, add2, out = args
            ei, nonce = split(ent, ent_bits, nonce_bits)
            fields = [("EntropyInput", ei), ("Nonce", nonce), ("PersonalizationString", pers),
                      ("AdditionalInput", add1), ("AdditionalInput", add2)]
            pr = "False"
        elif kind == "pr_false":
            ent, pers, add_reseed, add1, add2, out = args
            ei, nonce, eir = split(ent, ent_bits, nonce_bits, ent_bits)
            fields = [("EntropyInput", ei), ("Nonce", nonce), ("PersonalizationString", pers),
                      ("EntropyInputReseed", eir), ("AdditionalInputReseed", add_reseed),
                      ("AdditionalInput", add1), ("AdditionalInput", add2)]
            pr = "False"
        else:
            ent, pers, add1, add2, out = args
            ei, nonce, pr1, pr2 = split(ent, ent_bits, nonce_bits, ent_bits, ent_bits)
            fields = [("EntropyInput", ei), ("Nonce", nonce), ("PersonalizationString", pers),
                      ("AdditionalInput", add1), ("EntropyInputPR", pr1),
                      ("AdditionalInput", add2), ("EntropyInputPR", pr2)]
            pr = "True"
        fields.append(("ReturnedBits", out))
        add_bits = max(bitlen(add1), bitlen(add2))
        header = {
            "mech": mech,
            "PredictionResistance": pr,
            "EntropyInputLen": ent_bits,
            "NonceLen": nonce_bits,
            "PersonalizationStringLen": bitlen(pers),
            "AdditionalInputLen": add_bits,
            "ReturnedBitsLen": bitlen(out),
        }
        if title != current_key:
            current_key, current = title, []
            groups.append((header, current))
        current.append(fields)
    # The Mbed TLS copy repeats one group under a second title for some hashes.
    unique = []
    for header, records in groups:
        if any(records == seen for _, seen in unique):
            print("dropping duplicate", header["mech"], "group", file=sys.stderr)
            continue
        unique.append((header, records))
    return unique


def main():
    suites, outdir = Path(sys.argv[1]), Path(sys.argv[2])
    outdir.mkdir(parents=True, exist_ok=True)
    for src, kind, name in (
        ("test_suite_hmac_drbg.no_reseed.data", "no_reseed", "HMAC_DRBG_no_reseed.rsp"),
        ("test_suite_hmac_drbg.nopr.data", "pr_false", "HMAC_DRBG_pr_false.rsp"),
        ("test_suite_hmac_drbg.pr.data", "pr_true", "HMAC_DRBG_pr_true.rsp"),
    ):
        groups = convert(suites / src, kind)
        (outdir / name).write_text(render(f"drbg_{kind}", groups) + "\n")
        print(name, sum(len(g[1]) for g in groups), "cases in", len(groups), "groups")


if __name__ == "__main__":
    main()
