#!/usr/bin/env python3
"""Writes the ERKV1 fixtures used by the attention and CLI tests.

Independent of the C++ writer: plain struct packing, little-endian.
Run from this directory: python3 make_erkv.py
"""
import json
import math
import struct

DIM = 768


def write(path, records, dim=DIM):
    header = json.dumps({"dim": dim, "count": len(records), "dtype": "f32le"},
                        separators=(",", ":"))
    with open(path, "wb") as f:
        f.write(b"ERKV1\n")
        f.write(header.encode() + b"\n")
        for rid, vec in records:
            assert len(vec) == dim
            raw = rid.encode("utf-8")
            f.write(struct.pack("<I", len(raw)))
            f.write(raw)
            f.write(struct.pack("<%df" % dim, *vec))


def vector(seed):
    # Deterministic, exactly representable in f32 (multiples of 1/64).
    return [((seed * 31 + k * 17) % 129 - 64) / 64.0 for k in range(DIM)]


def unit(index, value=1.0):
    v = [0.0] * DIM
    v[index] = value
    return v


# Three posts, as produced for a 3-post corpus.
write("three_posts.erkv", [("p1", vector(1)), ("p2", vector(2)), ("p3", vector(3))])

# Two posts of one user: unit@15 then zero.
write("unit15_zero.erkv", [("a", unit(15)), ("b", [0.0] * DIM)])

# A 2x3 matrix with awkward values for the bit-exact round trip.
small = [("r0", [1.5, -0.0, 3.25]), ("r1", [float.fromhex("0x1.fffffep+127"),
                                           float.fromhex("0x1p-149"), -2.0])]
write("small_2x3.erkv", small, dim=3)

# Post vectors for the CLI pipeline fixture (users u1..u6 in
# tests/fixtures/pipeline/raw). Keyed by post_id.
posts = []
for user in range(1, 7):
    for post in range(1, 5):
        pid = "u%d_p%d" % (user, post)
        v = [0.0] * DIM
        # Depressed users (odd ids) lean on the indicator coordinates.
        lean = 1.0 if user % 2 == 1 else -1.0
        for k, idx in enumerate([15, 42, 127, 256, 512]):
            v[idx] = lean * (0.5 + 0.125 * ((post + k) % 4))
        v[0] = user / 8.0
        v[1] = post / 8.0
        posts.append((pid, v))
write("pipeline_posts.erkv", posts)

assert all(math.isfinite(x) for _, v in posts for x in v)
