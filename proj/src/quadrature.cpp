#include "taylor/quadrature.hpp"

namespace taylor {
namespace detail {

const double kGLNode[kGLCount] = {
    -0.9879925180204854284896,
    -0.9372733924007059043078,
    -0.8482065834104272162006,
    -0.7244177313601700474162,
    -0.5709721726085388475372,
    -0.3941513470775633698972,
    -0.2011940939974345223006,
    0.0,
    0.2011940939974345223006,
    0.3941513470775633698972,
    0.5709721726085388475372,
    0.7244177313601700474162,
    0.8482065834104272162006,
    0.9372733924007059043078,
    0.9879925180204854284896,
};

const double kGLWeight[kGLCount] = {
    0.03075324199611726835463,
    0.07036604748810812470927,
    0.1071592204671719350119,
    0.1395706779261543144478,
    0.1662692058169939335532,
    0.1861610000155622110268,
    0.1984314853271115764561,
    0.2025782419255612728806,
    0.1984314853271115764561,
    0.1861610000155622110268,
    0.1662692058169939335532,
    0.1395706779261543144478,
    0.1071592204671719350119,
    0.07036604748810812470927,
    0.03075324199611726835463,
};

}  // namespace detail
}  // namespace taylor
