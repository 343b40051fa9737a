# Copyright 2026 The sparqlbench Authors.
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

"""Independent reference values pinned by the C++ tests.

Run with python3; prints run-label seeds and SplitMix64/Fisher-Yates
permutations computed without the C++ code.
"""

import hashlib

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, bound):
        threshold = ((1 << 64) - bound) % bound
        while True:
            r = self.next()
            if r >= threshold:
                return r % bound


def shuffle(n, seed):
    idx = list(range(n))
    g = SplitMix64(seed)
    for i in range(n, 1, -1):
        j = g.below(i)
        idx[i - 1], idx[j] = idx[j], idx[i - 1]
    return idx


def seed(label):
    digest = hashlib.sha512((label + "\n").encode("ascii")).hexdigest()
    return int("".join(c for c in digest if c.isdigit())[:8])


if __name__ == "__main__":
    for i in range(1, 11):
        print(f"R{i:02d}", seed(f"R{i:02d}"))
    g = SplitMix64(0)
    print("splitmix64(0)", [hex(g.next()) for _ in range(3)])
    print("shuffle(5, 99975818)", shuffle(5, 99975818))
    print("shuffle(5, 56899599)", shuffle(5, 56899599))
    print("shuffle(10, 0)", shuffle(10, 0))
    print("shuffle(8, 44978336)", shuffle(8, 44978336))

    import json
    import pathlib

    data = pathlib.Path(__file__).resolve().parents[2] / "data"
    for name in ("orga", "coypu"):
        manifest = json.loads((data / name / "manifest.json").read_text())
        train = sorted(r["id"] for r in manifest["records"] if r["split"] == "train")
        order = shuffle(len(train), seed("R01"))
        print(name, "R01 first five", [train[k] for k in order[:5]])
