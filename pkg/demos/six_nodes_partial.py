"""A short, resumable chamber search for n = 6.

The full search is far beyond a desktop session, so this expands a few
hundred nodes, saves a checkpoint, reloads it and carries on.  Both winner
conventions for the 3x3 blocks are shown.

Run:  python3 demos/six_nodes_partial.py [nodes]
"""
import os
import sys
import tempfile

from polytropes.fans import EnumerationRun

nodes = int(sys.argv[1]) if len(sys.argv) > 1 else 200

with tempfile.TemporaryDirectory() as tmp:
    for winner in ("min", "max"):
        path = os.path.join(tmp, "n6-%s.json" % winner)
        run = EnumerationRun(6, winner=winner)
        run.run(max_nodes=nodes // 2, checkpoint=path)
        print("%s: saved after %d expansions, %d classes seen" % (winner, run.expanded, len(run.visited)))

        run = EnumerationRun.load(path)
        run.run(max_nodes=nodes - nodes // 2, checkpoint=path)
        print("%s: resumed to %d expansions, %d classes, %d waiting"
              % (winner, run.expanded, len(run.visited), len(run.frontier)))
        print("   lp solves:", dict(run.wall_oracle.stats))
