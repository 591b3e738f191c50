#!/usr/bin/env python3
# Copyright 2026 The QCNN-BP Authors
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
"""Convert the 10k MNIST digits shipped in the npm `mnist` package to IDX files.

Usage:
    npm pack mnist && tar xzf mnist-*.tgz
    python3 mnist_npm_to_idx.py package/src/digits OUT_DIR

Pixels in the package are stored as round(v / 255, 3); round(x * 255) recovers
the original bytes exactly. Digits are interleaved round-robin so that every
prefix of the file is class balanced.
"""
import gzip
import json
import os
import struct
import sys


def main():
    src, out = sys.argv[1], sys.argv[2]
    per_digit = []
    for d in range(10):
        with open(os.path.join(src, f"{d}.json")) as f:
            flat = json.load(f)["data"]
        if len(flat) % 784:
            raise SystemExit(f"digit {d}: length {len(flat)} not a multiple of 784")
        imgs = [bytes(int(round(v * 255)) for v in flat[i:i + 784])
                for i in range(0, len(flat), 784)]
        per_digit.append(imgs)

    images, labels = [], []
    depth = max(len(x) for x in per_digit)
    for i in range(depth):
        for d in range(10):
            if i < len(per_digit[d]):
                images.append(per_digit[d][i])
                labels.append(d)

    os.makedirs(out, exist_ok=True)
    # mtime=0 keeps the archives byte-reproducible.
    with gzip.GzipFile(os.path.join(out, "train-images-idx3-ubyte.gz"), "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x00000803, len(images), 28, 28))
        for img in images:
            f.write(img)
    with gzip.GzipFile(os.path.join(out, "train-labels-idx1-ubyte.gz"), "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(bytes(labels))
    print(f"wrote {len(images)} samples to {out}")


if __name__ == "__main__":
    main()
