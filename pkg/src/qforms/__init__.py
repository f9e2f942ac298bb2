"""Exact algebra of bicovariant differential forms on SL_q(N) over Q(z)."""
