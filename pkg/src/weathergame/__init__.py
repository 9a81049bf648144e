"""Extended Weather Game: an experiment platform for studying how
verbal, graphical, and multi-modal presentations of forecast uncertainty
affect human decision-making."""

__version__ = "0.1.0"
