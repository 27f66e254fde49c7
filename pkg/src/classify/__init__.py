"""Classification reports, witness searches and mutation-graph exploration."""
