#include <iostream>

int main() {
  std::cout << "krull-forge: not wired up yet\n";
  return 0;
}
