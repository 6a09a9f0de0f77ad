import _ccbs
print("ok")
