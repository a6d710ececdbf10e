#include <pfxauth/vertex.hpp>
#include <pfxauth/vertex.hpp>
