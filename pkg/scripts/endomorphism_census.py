"""Count unital endomorphisms, inner derivations and idempotents for each catalogue ring."""
from orelab.corpus import CATALOGUE, enumerate_endomorphisms, inner_derivations
from orelab.rings import build_ring, enumerate_idempotents


def main():
    total = 0
    print(f"{'ring':<10} {'order':>5} {'idem':>5}  endomorphisms (inner derivations)")
    for name, (spec, named) in CATALOGUE.items():
        R = build_ring(spec)
        ms = enumerate_endomorphisms(R, named=named)
        parts = []
        for m in ms:
            k = len(inner_derivations(R, m))
            total += k
            parts.append(f"{m.name}({k - 1})")
        print(f"{name:<10} {R.order:>5} {len(enumerate_idempotents(R)):>5}  {' '.join(parts)}")
    print(f"instances in the default corpus: {total}")


if __name__ == "__main__":
    main()
