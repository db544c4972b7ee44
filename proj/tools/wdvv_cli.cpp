#include <iostream>

int main() {
    std::cout << "wdvv: work in progress\n";
    return 0;
}
