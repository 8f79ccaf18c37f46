"""Groups definable in Q_p: p-adic arithmetic, Presburger cells, catalog families, elliptic and Tate curves."""
