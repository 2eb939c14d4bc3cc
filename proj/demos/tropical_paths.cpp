// Over the tropical rig, series composition takes the minimum conductance,
// so normalizing a chain reports the bottleneck along the path.

#include <iostream>

#include <starmesh/starmesh.hpp>

using namespace starmesh;

int main() {
    auto chain = compose(compose(Circuit<TropicalRig>::resistor(4.0),
                                 Circuit<TropicalRig>::resistor(1.5)),
                         Circuit<TropicalRig>::resistor(3.0));
    auto res = normalize(chain);
    std::cout << "chain 4, 1.5, 3 -> " << res.form.to_string() << '\n';

    // two parallel chains: the best bottleneck wins
    auto two = compose(compose(Circuit<TropicalRig>::spider(1, 2),
                               tensor(chain, Circuit<TropicalRig>::resistor(2.0))),
                       Circuit<TropicalRig>::spider(2, 1));
    std::cout << "in parallel with 2 -> " << normalize(two).form.to_string() << '\n';
    return 0;
}
