"""Dev script: build the <=6-vertex verdict fixture with the brute-force oracle."""
import itertools
import sys
import time

from galledpower.graph_core import Graph
from galledpower.harness import brute_force_recognize, graph6


def connected_graphs(n):
    verts = [chr(ord('a') + i) for i in range(n)]
    pairs = list(itertools.combinations(verts, 2))
    seen, out = set(), []
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        g = Graph(verts, edges)
        if not g.is_connected():
            continue
        code = graph6(g)
        if code in seen:
            continue
        seen.add(code)
        out.append(g)
    return out


def main(max_n=6, out_path="tests/fixtures/small_verdicts.tsv"):
    rows = []
    for n in range(1, max_n + 1):
        graphs = connected_graphs(n)
        print(f"n={n}: {len(graphs)} connected graphs", flush=True)
        for i, g in enumerate(graphs):
            t0 = time.time()
            verdict, _ = brute_force_recognize(g, 4, 2 * n)
            rows.append((graph6(g), verdict))
            dt = time.time() - t0
            if dt > 5:
                print(f"  [{i+1}/{len(graphs)}] {graph6(g)} -> {verdict} ({dt:.0f}s)",
                      flush=True)
    with open(out_path, "w") as fh:
        for code, verdict in rows:
            fh.write(f"{code}\t{verdict}\n")
    print(f"wrote {len(rows)} rows to {out_path}", flush=True)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 6)
