label = 'even' if 10 % 2 == 0 else 'odd'
