#include <cstdio>

int main() {
    std::puts("umcli: not wired up yet");
    return 2;
}
