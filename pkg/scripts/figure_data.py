"""Write the SO / irr / M1 series along paths, stars and balanced three-leg spiders."""

from __future__ import annotations

import sys

from treedex.cli import run

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "figure_data.csv"
    sys.exit(run(["figure", "--families", "path,star,spider", "--order-range", "3..40", "--out", out]))
