// assembled below
