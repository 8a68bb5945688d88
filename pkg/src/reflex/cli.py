"""Command-line front end.

Subcommands: lattice, rootsys, vinberg, classify, lift, borcherds, verify.
All numeric output is exact rational strings; exit codes: 0 success,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classify as cls
from . import vinberg as vb
from .lattice import build, discriminant_group, qstr

Q = Fraction


def _out(args, payload):
    text = json.dumps(payload, indent=2) if args.format == "json" \
        else _text_dump(payload)
    if args.output in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")


def _text_dump(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        return "\n".join(f"{pad}{k}: " + (("\n" + _text_dump(v, indent + 1))
                                          if isinstance(v, (dict, list))
                                          else str(v))
                         for k, v in payload.items())
    if isinstance(payload, list):
        return "\n".join(_text_dump(v, indent) if isinstance(v, (dict, list))
                         else f"{pad}- {v}" for v in payload)
    return pad + str(payload)


def cmd_lattice(args):
    lat = build(args.descriptor)
    info = lat.to_json()
    p, q = lat.signature()
    info["signature"] = [p, q]
    if args.discriminant:
        info["discriminant_group"] = discriminant_group(lat).to_json()
    _out(args, info)
    return 0


def cmd_rootsys(args):
    from . import rootsys as rs

    if args.name.upper() in ("3E8", "3D8", "6D4", "24A1", "12A2"):
        n = rs.niemeier(args.name.upper())
        lat = n.lattice
        info = {"name": f"N({n.name})", "det": qstr(lat.det()),
                "roots": len(lat.short_vectors(2)),
                "components": [f"{l}{r}" for (l, r, _o) in n.components]}
    elif args.name.upper() == "N8":
        lat = rs.nikulin_n8()
        info = {"name": "N8", "det": qstr(lat.det()),
                "roots": len(lat.short_vectors(2))}
    else:
        lat = build(args.name)
        rd = rs.root_datum(lat)
        info = {
            "name": args.name,
            "coxeter_numbers": [c.coxeter_number for c in rd.components],
            "positive_roots": len(rd.positive_roots),
            "weyl_vector": [qstr(x) for x in rd.finite_weyl_vector],
            "highest_roots": [[qstr(x) for x in c.highest_root]
                              for c in rd.components],
        }
    _out(args, info)
    return 0


def cmd_vinberg(args):
    lat = build(args.descriptor)
    srs = vb.vinberg(lat, height_cap=Q(args.height_cap),
                     max_roots=args.max_roots)
    graph = vb.cartan_graph(srs)
    wv = vb.weyl_vector(srs) if srs.roots else None
    payload = srs.to_json()
    payload["cartan"] = graph.to_json()
    if wv is not None:
        payload["weyl"] = wv.to_json()
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(graph.to_dot())
    _out(args, payload)
    return 0


def cmd_classify(args):
    reports = cls.run_catalog(args.filter, jobs=args.jobs)
    summary = cls.summary(reports)
    payload = {"summary": summary, "entries": reports}
    _out(args, payload)
    return 0 if summary["failed"] == 0 else 1


def cmd_lift(args):
    from . import lifting as lf

    name = args.form.replace(" ", "")
    n_max, m_max = args.n_max, args.m_max
    if name.startswith("delta_12-k_D") or name.startswith("delta_D"):
        k = int(name.rsplit("D", 1)[1])
        psi = lf.psi_tower_Dk(k, Q(n_max) * Q(m_max) + 2)
        form = lf.jacobi_lift(psi, n_max, m_max)
    elif name == "delta_4_D8":
        psi = lf.theta_D8(Q(n_max) * Q(m_max) + 2)
        form = lf.jacobi_lift(psi, n_max, m_max)
    elif name in ("sigma_3A2", "delta_3_3A2"):
        sig = lf.sigma_kA2(3, Q(n_max) * Q(m_max) + 2)
        form = lf.jacobi_lift(sig, n_max, m_max)
    elif name.startswith("delta_") and name.endswith("A1"):
        form = lf.delta_halfint_catalog(_halfint_name(name), n_max, m_max)
    elif name in ("F24_U2D4", "F24"):
        form = lf.product_forms("F24", n_max, m_max)
    elif name in ("F6_U4D4", "F6"):
        form = lf.product_forms("F6", n_max, m_max)
    else:
        print(f"unknown form name {args.form}", file=sys.stderr)
        return 2
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write(form.dump() + "\n")
    else:
        sys.stdout.write(form.dump() + "\n")
    return 0


def _halfint_name(name):
    # delta_2_4A1 -> Delta_2,4A1
    parts = name.split("_")
    return f"Delta_{parts[1]},{parts[2]}"


def cmd_borcherds(args):
    from . import borcherds as bo

    if args.action == "phi0":
        f = bo.phi0_from_niemeier(args.host, _parse_indices(args.indices),
                                  Q(args.n_max), n8=args.n8)
        sys.stdout.write(f.phi.dump() + "\n")
        return 0
    if args.action == "product":
        f = bo.phi0_from_niemeier(args.host, _parse_indices(args.indices),
                                  Q(args.n_max) * Q(args.m_max) + 1,
                                  n8=args.n8)
        prod = bo.borcherds_product(f, Q(args.n_max), Q(args.m_max))
        sys.stdout.write(prod.dump() + "\n")
        return 0
    print("unknown borcherds action", file=sys.stderr)
    return 2


def _parse_indices(text):
    return [int(x) for x in text.split(",") if x.strip() != ""]


def cmd_verify(args):
    from . import borcherds as bo
    from . import lifting as lf

    name = args.target.replace(" ", "")
    n_max, m_max = Q(args.orders.split(",")[0]), Q(args.orders.split(",")[1])
    if name.startswith("U+D"):
        k = int(name[3:])
        phi0 = lf.phi0_tower_Dk(k, n_max * m_max + 2)
        f = bo.BorcherdsInput(phi0)
        psi = lf.psi_tower_Dk(k, n_max * m_max * 2 + 2)
        lift = lf.jacobi_lift(psi, n_max, m_max)
        refl = [(_coordinate_reflection(k, 0), -1)]
        ref = bo.fourier_jacobi_reference(f, n_max)
        report = bo.denominator_verify(lift, f, n_max, m_max,
                                       reflections=refl, fj_reference=ref)
    else:
        print(f"unsupported verify target {args.target}", file=sys.stderr)
        return 2
    payload = {"target": args.target, "report": report}
    _out(args, payload)
    return 0 if report["status"] == "pass" else 1


def _coordinate_reflection(dim, pos):
    return [[(-1 if (i == j == pos) else int(i == j)) for j in range(dim)]
            for i in range(dim)]


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="reflex",
        description="Exact workbench for 2-reflective hyperbolic lattices "
                    "and their automorphic corrections.")
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--output", "-o", default="-")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("lattice", help="build a lattice and print invariants")
    p.add_argument("descriptor")
    p.add_argument("--discriminant", action="store_true")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("rootsys", help="root system / Niemeier info")
    p.add_argument("name")
    p.set_defaults(func=cmd_rootsys)

    p = sub.add_parser("vinberg", help="run Vinberg's algorithm")
    p.add_argument("descriptor")
    p.add_argument("--height-cap", default=10 ** 4, type=int)
    p.add_argument("--max-roots", default=1000, type=int)
    p.add_argument("--dot", help="write the Cartan graph in DOT format")
    p.set_defaults(func=cmd_vinberg)

    p = sub.add_parser("classify", help="run the embedded catalog")
    p.add_argument("action", nargs="?", default="run")
    p.add_argument("--filter", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lift", help="expand a lifted form")
    p.add_argument("form")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--m-max", type=int, default=3)
    p.add_argument("--dump", help="write the expansion to a file")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("borcherds", help="phi0 inputs and products")
    p.add_argument("action", choices=["phi0", "product"])
    p.add_argument("--host", required=True)
    p.add_argument("--indices", default="0")
    p.add_argument("--n8", action="store_true")
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--m-max", type=int, default=2)
    p.set_defaults(func=cmd_borcherds)

    p = sub.add_parser("verify", help="denominator identity checks")
    p.add_argument("kind", choices=["denominator"])
    p.add_argument("target")
    p.add_argument("--orders", default="3,3")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_usage()
        return 2
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
