"""Compare the iterated multiplication rule with the explicit word expansion on random products."""
import argparse
import random
import time

from orelab.corpus import InstanceStream, generate_instances
from orelab.ore import OreExtension


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--products", type=int, default=2000, help="products per instance")
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = total = 0
    t0 = time.perf_counter()
    for inst in generate_instances(InstanceStream(seed=args.seed)):
        ext = OreExtension(inst.ring, inst.sigma, inst.delta)
        elems = inst.ring.elements

        def rand():
            return ext.poly([rng.choice(elems) for _ in range(rng.randint(1, args.degree + 1))])

        for _ in range(args.products):
            p, q = rand(), rand()
            total += 1
            if ext.mul(p, q) != ext.mul_words(p, q):
                bad += 1
                print(f"mismatch on {inst.label}: ({p}) * ({q})")
    print(f"{total} products, {bad} mismatches, {time.perf_counter() - t0:.1f}s")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
