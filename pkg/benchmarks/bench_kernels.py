"""Compare the compiled and NumPy kernel backends.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. Each kernel is
timed on the same inputs under both backends and the outputs are checked to
agree before the timings are reported.
"""

import argparse
import timeit

import numpy as np

from cstardecay import kernels


def _cases(rng):
    n = 40
    a = rng.standard_normal((n, n, 4))
    b = rng.standard_normal((n, n, 4))
    a[rng.random((n, n)) < 0.7] = 0  # sparse, like a banded quaternion matrix
    pattern = np.ascontiguousarray(rng.random((200, 200)) < 0.02, dtype=np.uint8)
    M = rng.random((150, 150))
    B = np.ascontiguousarray(M.T @ M)
    return {
        "quat_matmul (40x40)": ("quat_matmul", (a, b)),
        "bfs_distances (200 nodes)": ("bfs_distances", (pattern,)),
        "power_iteration (150x150)": ("power_iteration", (B, 0.0, 1e-12, 5000, True)),
    }


def _first(out):
    return out[1] if isinstance(out, tuple) else out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; timing the python backend only")
    rng = np.random.default_rng(0)
    print(f"{'kernel':28s}" + "".join(f"{b:>14s}" for b in backends) + "   speedup")
    for label, (name, inputs) in _cases(rng).items():
        outs, times = [], []
        for backend in backends:
            fn = kernels.get(name, backend)
            outs.append(_first(fn(*inputs)))
            times.append(min(timeit.repeat(lambda: fn(*inputs), number=1,
                                           repeat=args.repeat)))
        for o in outs[1:]:
            assert np.allclose(o, outs[0], rtol=1e-9, atol=1e-12), f"{name} backends disagree"
        speed = f"{times[-1] / times[0]:9.1f}x" if len(times) == 2 else ""
        print(f"{label:28s}" + "".join(f"{t * 1e3:12.3f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
