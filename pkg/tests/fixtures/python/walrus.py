values = [1, 5, 2, 8]
if (m := max(values)) > 4:
    print(m)
