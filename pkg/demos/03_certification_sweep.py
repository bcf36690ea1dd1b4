"""
Checking cycle theorems over many families
==========================================

Every transitive family over three ground elements, every certifier.
A certifier says pass, fail, vacuously true (its hypothesis never holds)
or undecided (the group was too large to enumerate).
"""

from togglelab import FamilyStream, sweep

report = sweep(FamilyStream(3, transitive_only=True))
print(report.summary_table())

# a sampled run over four ground elements; the seed fixes the sample
sampled = sweep(
    FamilyStream(4, mode="sampled", seed=42, count=200, transitive_only=True),
    ["transposition", "imprimitive-decomposition"],
)
print(sampled.summary_table())
