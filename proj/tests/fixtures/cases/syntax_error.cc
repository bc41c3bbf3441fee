struct Broken {
  int x;
)

int later(int a) { return a; }
