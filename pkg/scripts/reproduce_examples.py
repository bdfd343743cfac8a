"""Print the two worked degree-sequence examples: printed values next to direct evaluation."""

from __future__ import annotations

from treedex.audit import worked_examples


def show(value) -> str:
    if isinstance(value, dict) and "num" in value:
        return f"{value['num']}/{value['den']}"
    return "-" if value is None else str(value)


def main() -> None:
    for entry in worked_examples():
        print(f"sequence {entry['sequence']} -> {entry['completed']} (n = {entry['n']}, {entry['realizations']} realizations)")
        print(f"  k = {show(entry['k'])}, mu = {entry['mu']}, x = {entry['x']}, y = {entry['y']}")
        print(f"  {'quantity':<14}{'printed':>10}{'computed':>18}")
        rows = [
            ("eta", entry["eta"]["printed"], entry["eta"]["computed"]),
            ("lower bound", entry["lower_bound"]["printed"], entry["lower_bound"]["computed"]),
            ("upper bound", entry["upper_bound"]["printed"], entry["upper_bound"]["computed_at_min_irr"]),
            ("sigma_edge", entry["sigma_edge"]["printed"], f"{entry['sigma_edge']['computed_min']}..{entry['sigma_edge']['computed_max']}"),
            ("irr", entry["irr"]["printed"], f"{entry['irr']['computed_min']}..{entry['irr']['computed_max']}"),
        ]
        for name, printed, computed in rows:
            print(f"  {name:<14}{show(printed):>10}{show(computed):>18}")
        print()


if __name__ == "__main__":
    main()
