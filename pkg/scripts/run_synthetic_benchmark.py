"""Mean AUC*@ec* of every method over seeded synthetic datasets.

    python3 scripts/run_synthetic_benchmark.py --n 2000 --seeds 10
"""

import argparse
import statistics
import time

from progressive_er.evaluation import CHECKPOINTS, Budget, normalized_auc, run_experiment
from progressive_er.methods import METHODS, MethodParams, build_emitter
from progressive_er.synth import SynthConfig, synthesize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--dup-rate", type=float, default=0.1)
    ap.add_argument("--noise", type=float, default=0.3)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--clean-clean", action="store_true")
    ap.add_argument("--methods", nargs="*", default=list(METHODS))
    args = ap.parse_args()

    budget = Budget(max(CHECKPOINTS))
    scores = {m: {c: [] for c in CHECKPOINTS} for m in args.methods}
    seconds = dict.fromkeys(args.methods, 0.0)
    for seed in range(args.seeds):
        cfg = SynthConfig(args.n, args.dup_rate, args.noise, seed, args.clean_clean)
        coll, gt = synthesize(cfg)
        for m in args.methods:
            t0 = time.perf_counter()
            curve = run_experiment(build_emitter(m, coll, MethodParams()), gt, budget=budget)
            seconds[m] += time.perf_counter() - t0
            for c in CHECKPOINTS:
                scores[m][c].append(normalized_auc(curve, c))

    print(f"{'method':<8} " + " ".join(f"{'auc*@' + str(c):>9}" for c in CHECKPOINTS) + "  seconds")
    for m in args.methods:
        row = " ".join(f"{statistics.fmean(scores[m][c]):9.4f}" for c in CHECKPOINTS)
        print(f"{m:<8} {row}  {seconds[m]:7.2f}")


if __name__ == "__main__":
    main()
