#!/usr/bin/env python3
"""Solve a DIMACS CNF file with Minisat22 and print SAT-competition output.

Usage: dimacs_pysat.py FILE.cnf
"""

import sys

from pysat.formula import CNF
from pysat.solvers import Minisat22


def main(argv):
    if len(argv) != 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    cnf = CNF(from_file=argv[1])
    with Minisat22(bootstrap_with=cnf.clauses) as solver:
        if solver.solve():
            model = solver.get_model() or []
            print("s SATISFIABLE")
            print("v " + " ".join(str(lit) for lit in model) + " 0")
            return 10
        print("s UNSATISFIABLE")
        return 20


if __name__ == "__main__":
    sys.exit(main(sys.argv))
