# topmon backend
