# Utilidades de archivos
