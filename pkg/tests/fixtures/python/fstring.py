msg = f'value={42:>5} ok={True}'
