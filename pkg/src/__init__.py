"""Cosymplectic lab: exact verification of cosymplectic and Kähler structures on Lie algebras."""
