squares = [i * i for i in range(20) if i % 2 == 0]
