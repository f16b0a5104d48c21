# Motor de destilación de conocimiento LDRLD
