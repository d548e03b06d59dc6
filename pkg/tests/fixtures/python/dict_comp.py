lengths = {w: len(w) for w in ('apple', 'fig', 'cherry')}
