"""Compare the numba and numpy kernels on the same empty-box searches.

    python3 benchmarks/bench_oracle.py [--repeat 3]

Each backend runs in a subprocess so ``DIAGDISP_BACKEND`` is read fresh.
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
import numpy as np
from diagdisp import _kernels
from diagdisp.configuration import build_config

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
cases = {
    "random n=12 d=2": rng.random((12, 2)),
    "random n=8 d=3": rng.random((8, 3)),
    "random n=6 d=4": rng.random((6, 4)),
    "diagonal r=0.26 d=3": build_config(0.26, 3).as_array(),
}
batch = np.repeat(rng.random((2000, 4, 1)), 2, axis=2)

_kernels.search(cases["random n=12 d=2"])  # compile or load the cache
_kernels.search_batch(batch[:2])
out = {}
for name, x in cases.items():
    t = time.perf_counter()
    for _ in range(repeat):
        vol = _kernels.search(x)[0]
    out[name] = ((time.perf_counter() - t) / repeat, vol)
t = time.perf_counter()
vals = _kernels.search_batch(batch)
out["batch 2000 x (n=4, d=2)"] = (time.perf_counter() - t, float(vals.sum()))
print(json.dumps(out))
"""


def run(backend, repeat):
    env = dict(os.environ, DIAGDISP_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, "-c", CHILD, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(proc.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    fast = run("numba", args.repeat)
    slow = run("numpy", args.repeat)
    print(f"{'case':<28}{'numba s':>12}{'numpy s':>12}{'speedup':>10}  same")
    for name in fast:
        (tf, vf), (ts, vs) = fast[name], slow[name]
        print(f"{name:<28}{tf:>12.5f}{ts:>12.5f}{ts / tf:>10.1f}  {vf == vs}")


if __name__ == "__main__":
    main()
