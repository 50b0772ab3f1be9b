# Correlations of word pairs: enumeration, population sizes and statistics
