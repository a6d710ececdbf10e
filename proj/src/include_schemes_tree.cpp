#include <pfxauth/schemes/tree.hpp>
#include <pfxauth/schemes/tree.hpp>
