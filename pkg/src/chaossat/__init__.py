"""SAT as a reversible circuit, with chaotic and dissipative amplitude
discriminators and quantum mutual-entropy metrics."""

__version__ = "0.1.0"
