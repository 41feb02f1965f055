# Copyright 2026 The rrcstego Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values for the C++ tests.

Uses only the Python standard library. Run it and compare the printed values
with the constants frozen in tests/unit/*.cpp.
"""

import hashlib
import hmac
import math
from fractions import Fraction


def offset(key: bytes, t: int, r: int = 128) -> Fraction:
    block = hmac.new(key, t.to_bytes(8, "big"), hashlib.sha256).digest()
    nbytes = (r + 7) // 8
    k = int.from_bytes(block[:nbytes], "big") >> (8 * nbytes - r)
    return Fraction(k, 2**r)


def ngram_prob(corpus: bytes, hist: bytes, tok: int, k: Fraction) -> Fraction:
    vocab = sorted(set(corpus))
    n = len(hist)
    count = lambda h, c: sum(1 for i in range(n, len(corpus)) if corpus[i - n:i] == h and corpus[i] == c)
    total = sum(count(hist, v) + k for v in vocab)
    return (count(hist, tok) + k) / total


def vanilla_trace(probs, message: int, l: int):
    """Fixed-point codec: intervals visited while round_half_down(mid) != d."""
    cum = [Fraction(0)]
    for p in probs:
        cum.append(cum[-1] + p)
    lo, hi = Fraction(0), Fraction(2**l)
    out = []
    while math.ceil((lo + hi) / 2 - Fraction(1, 2)) != message:
        w = hi - lo
        for i in range(len(probs)):
            a, b = lo + w * cum[i], lo + w * cum[i + 1]
            if a <= message < b:
                out.append((i, a, b))
                lo, hi = a, b
                break
    return out


def main():
    key = bytes(range(32))
    block = hmac.new(key, (0).to_bytes(8, "big"), hashlib.sha256).hexdigest()
    print("hmac(key=00..1f, t=0)", block)
    for t in (0, 1, 7):
        print(f"offset t={t} r=128", offset(key, t))
    print("offset t=0 r=5", offset(key, 0, 5))
    print("offset t=3 r=256", offset(key, 3, 256))

    four = [Fraction(13, 20), Fraction(1, 5), Fraction(1, 10), Fraction(1, 20)]
    print("entropy four-token", -sum(float(p) * math.log2(p) for p in four))
    print("scaled[1] four-token on 2^16", Fraction(65536) * four[0])
    print("bits 0100111011111011 =", int("0100111011111011", 2))
    print("integers in [0, 212992/5)", math.ceil(Fraction(212992, 5)))
    tr = vanilla_trace(four, 20219, 16)
    print("vanilla four-token trace len", len(tr), "first", tr[0], "indices", [i for i, _, _ in tr])
    print("vanilla l=1 m=0 uniform", vanilla_trace([Fraction(1, 2)] * 2, 0, 1))
    print("vanilla l=1 m=1 uniform", vanilla_trace([Fraction(1, 2)] * 2, 1, 1))
    print("P(b|a) abab n=1 k=0", ngram_prob(b"abab", b"a", ord("b"), Fraction(0)))
    print("P(a|a) aab n=1 k=1", ngram_prob(b"aab", b"a", ord("a"), Fraction(1)))
    tiny = b"the cat sat on the mat"
    for h, c in ((b"t", b"h"), (b"a", b"t"), (b" ", b"m"), (b"", b"t")):
        print(f"tiny k=1/2 P({c!r}|{h!r})", ngram_prob(tiny, h, c[0], Fraction(1, 2)))


if __name__ == "__main__":
    main()
