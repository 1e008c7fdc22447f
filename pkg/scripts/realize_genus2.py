#!/usr/bin/env python3
"""Run the pipeline on the smallest interesting action: a genus-2 surface
with an anticonformal automorphism of order 4 whose quotient is a
projective plane with three order-2 cone points.  Prints the full text
certificate."""

from necsurf import ActionDatum, realize
from necsurf.cli import certificate_text

datum = ActionDatum(gamma=1, periods=(2, 2, 2), n=2, d_images=(1,), x_images=(2, 2, 2))
print(certificate_text(realize(datum)), end="")
