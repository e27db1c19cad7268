#!/usr/bin/env python3
"""Run an SMT-LIB file through the cvc5 Python bindings.

For machines that have the pip package but no cvc5 binary. Takes cvc5-style
flags (--name or --name=value) followed by one input file and prints what
cvc5 itself would print.
"""
import signal
import sys

try:
    import cvc5
except ImportError:
    sys.stderr.write("cvc5 Python bindings are not installed\n")
    sys.exit(127)


def main(argv):
    options, files = [], []
    for arg in argv:
        if arg.startswith("--"):
            name, _, value = arg[2:].partition("=")
            options.append((name, value or "true"))
        else:
            files.append(arg)
    if len(files) != 1:
        sys.stderr.write("usage: cvc5_smt.py [--option[=value]]... FILE\n")
        return 2
    tm = cvc5.TermManager()
    solver = cvc5.Solver(tm)
    for name, value in options:
        # the library ignores tlimit (only the cvc5 driver enforces it), so
        # use the per-query limit and keep SIGALRM as a hard stop
        if name == "tlimit":
            solver.setOption("tlimit-per", value)
            signal.signal(signal.SIGALRM, signal.SIG_DFL)
            signal.alarm(int(value) // 1000 + 2)
            continue
        solver.setOption(name, value)
    symbols = cvc5.SymbolManager(tm)
    parser = cvc5.InputParser(solver, symbols)
    parser.setFileInput(cvc5.InputLanguage.SMT_LIB_2_6, files[0])
    while True:
        cmd = parser.nextCommand()
        if cmd.isNull():
            break
        out = cmd.invoke(solver, symbols)
        if out:
            sys.stdout.write(out)
            sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
