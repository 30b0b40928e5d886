# Super Jacobi package
