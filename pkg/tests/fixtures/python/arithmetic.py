total = (3 + 4) * 2 - 7 / 3
