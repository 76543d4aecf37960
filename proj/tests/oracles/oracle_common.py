"""Emits frozen oracle tables as C++ initializers."""
import mpmath as mp

mp.mp.dps = 50


def fmt(v):
    return mp.nstr(mp.mpf(v), 30, min_fixed=1, max_fixed=0) if v != 0 else "0.0"


def table(name, rows):
    """rows: (args tuple of up to 4 reals, complex value)."""
    out = [f"inline const OracleRow {name}[] = {{"]
    for args, val in rows:
        a = list(args) + [0.0] * (4 - len(args))
        val = mp.mpc(val)
        out.append("    {{%s}, %s, %s}," % (", ".join(repr(float(x)) for x in a), fmt(val.real), fmt(val.imag)))
    out.append("};")
    return "\n".join(out)


def emit(script, tables):
    print(f"// Generated by tests/oracles/{script}; do not edit.")
    print("#pragma once")
    print('#include "oracle_row.hpp"')
    print()
    for name, rows in tables:
        print(table(name, rows))
        print()
