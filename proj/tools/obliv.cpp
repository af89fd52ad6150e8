#include <cstdio>

int main() {
  std::puts("obliv: placeholder");
  return 0;
}
