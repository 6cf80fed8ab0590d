"""Shared in-memory API index for flow/pattern/synth tests."""

from __future__ import annotations

from featsmith.apiindex import APIConstant, APIIndex, APIMethod


def make_toy_index() -> APIIndex:
    types = {
        "Workbook": (),
        "HSSFWorkbook": ("Workbook",),
        "Sheet": (),
        "Row": (),
        "Cell": (),
        "CellStyle": (),
        "Font": (),
        "FillPatternType": (),
        "IndexedColors": (),
        "CellRangeAddress": (),
        "OutputStream": (),
        "IOException": (),
    }
    m = APIMethod
    methods = [
        m("Workbook", "createCellStyle", (), "CellStyle"),
        m("Workbook", "createSheet", (), "Sheet"),
        m("Workbook", "createFont", (), "Font"),
        m("Workbook", "write", ("OutputStream",), "void"),
        m("HSSFWorkbook", "<init>", (), "HSSFWorkbook", constructor=True),
        m("Sheet", "createRow", ("int",), "Row"),
        m("Sheet", "addMergedRegion", ("CellRangeAddress",), "int"),
        m("Row", "createCell", ("int",), "Cell"),
        m("Cell", "setCellStyle", ("CellStyle",), "void"),
        m("Cell", "setCellValue", ("String",), "void"),
        m("CellStyle", "setFillForegroundColor", ("short",), "void"),
        m("CellStyle", "setFillBackgroundColor", ("short",), "void"),
        m("CellStyle", "setFillPattern", ("FillPatternType",), "void"),
        m("CellStyle", "setFont", ("Font",), "void"),
        m("Font", "setItalic", ("boolean",), "void"),
        m("Font", "setColor", ("short",), "void"),
        m("IndexedColors", "getIndex", (), "short"),
        m("CellRangeAddress", "<init>", ("int", "int", "int", "int"), "CellRangeAddress", constructor=True),
        m("IOException", "printStackTrace", (), "void"),
    ]
    constants = [
        APIConstant("FillPatternType", "SOLID_FOREGROUND", "FillPatternType"),
        APIConstant("FillPatternType", "DIAMONDS", "FillPatternType"),
        APIConstant("IndexedColors", "YELLOW", "IndexedColors"),
        APIConstant("IndexedColors", "RED", "IndexedColors"),
    ]
    return APIIndex("toysheet", types, methods, constants)
