#!/usr/bin/env python3
"""Generate data/mscc_renotation.csv.

Writes Munsell renotation xyY coordinates (illuminant C, 2 degree observer)
for the soil chart chips on the seven default pages, plus a handful of
neutral rows that the chip database builder is expected to skip.

Odd chromas and the 2.5 value level are not part of the published
renotation tables; they are interpolated with colour-science's
munsell_colour_to_xyY. Requires `pip install colour-science`.
"""

import sys
import warnings

import colour
from colour.colorimetry import luminance_ASTMD1535

warnings.filterwarnings("ignore")

PAGES = ["10R", "2.5YR", "5YR", "7.5YR", "10YR", "2.5Y", "5Y"]

# value -> chromas present on each page (34 chips per page)
LAYOUT = {
    8: [1, 2, 3, 4, 6, 8],
    7: [1, 2, 3, 4, 6, 8],
    6: [1, 2, 3, 4, 6, 8],
    5: [1, 2, 3, 4, 6, 8],
    4: [1, 2, 3, 4, 6],
    3: [1, 2, 3],
    2.5: [1, 2],
}

NEUTRAL_VALUES = [2.5, 3, 4, 5, 6, 7, 8]
ILLUMINANT_C_XY = (0.31006, 0.31616)


def main(out):
    out.write("# Munsell renotation xyY, illuminant C, CIE 1931 2 degree observer.\n")
    out.write("# Y is on the renotation scale (percent). Odd chromas and value 2.5\n")
    out.write("# are interpolated from the published renotation tables.\n")
    out.write("# Rows with hue N are neutral (gley/white) chips.\n")
    out.write("hue,value,chroma,x,y,Y\n")
    for page in PAGES:
        for value, chromas in LAYOUT.items():
            for chroma in chromas:
                x, y, Y = colour.munsell_colour_to_xyY(f"{page} {value:g}/{chroma}")
                out.write(f"{page},{value:g},{chroma},{x:.8f},{y:.8f},{Y * 100:.8f}\n")
    for value in NEUTRAL_VALUES:
        Y = luminance_ASTMD1535(value)
        out.write(f"N,{value:g},0,{ILLUMINANT_C_XY[0]:.8f},{ILLUMINANT_C_XY[1]:.8f},{Y:.8f}\n")


if __name__ == "__main__":
    main(sys.stdout)
