"""Render the full CLI help (top level plus every subcommand)."""

from vassiliev.cli import build_parser


def render() -> str:
    p = build_parser()
    parts = [p.format_help()]
    sub = next(a for a in p._actions if a.__class__.__name__ == "_SubParsersAction")
    for name, sp in sub.choices.items():
        parts.append(f"=== {name} ===\n" + sp.format_help())
    return "\n".join(parts)


if __name__ == "__main__":
    print(render(), end="")
