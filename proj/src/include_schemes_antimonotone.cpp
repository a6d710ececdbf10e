#include <pfxauth/schemes/antimonotone.hpp>
#include <pfxauth/schemes/antimonotone.hpp>
