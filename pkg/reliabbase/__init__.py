# -*- coding: utf-8 -*-
__all__ = ["exceptions", "moments", "stdnorm"]
